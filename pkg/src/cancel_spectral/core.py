"""3-uniform hypergraphs: representation, constructions and structural queries."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

Edge = tuple[int, int, int]
Pair = tuple[int, int]


class UnsupportedSizeError(ValueError):
    """Raised when an exhaustive routine is asked to run outside its size regime."""


@dataclass(frozen=True)
class UniformHypergraph:
    """A 3-graph on vertices ``0..n-1``.

    Edges are normalized on construction: each triple is sorted ascending and
    the edge tuple is sorted lexicographically. Duplicate edges and vertices
    outside ``[0, n)`` raise ``ValueError``.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    r: int = field(default=3, init=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        normalized = []
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"edge {tuple(e)} is not a set of 3 distinct vertices")
            if t[0] < 0 or t[2] >= n:
                raise ValueError(f"edge {t} has a vertex outside [0, {n})")
            normalized.append(t)
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, the indices of the edges containing it."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                inc[v].append(idx)
        return tuple(tuple(i) for i in inc)

    @cached_property
    def pair_index(self) -> dict[Pair, tuple[Edge, ...]]:
        """Map each covered pair to the edges containing it."""
        idx: dict[Pair, list[Edge]] = defaultdict(list)
        for e in self.edges:
            for p in combinations(e, 2):
                idx[p].append(e)
        return {p: tuple(es) for p, es in idx.items()}

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        """E_v(G): the edges containing ``v``."""
        _check_vertex(self, v)
        return tuple(self.edges[i] for i in self.incidence[v])

    def degree(self, v: int) -> int:
        _check_vertex(self, v)
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(i) for i in self.incidence]

    def adjacent(self, u: int, v: int) -> bool:
        """True when some edge contains both ``u`` and ``v``."""
        if u == v:
            return False
        return (min(u, v), max(u, v)) in self.pair_index

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def add_edge(self, e: Iterable[int]) -> "UniformHypergraph":
        return UniformHypergraph(self.n, self.edges + (tuple(e),))

    def remove_edge(self, e: Iterable[int]) -> "UniformHypergraph":
        t = tuple(sorted(e))
        if t not in self.edge_set:
            raise ValueError(f"edge {t} not present")
        return UniformHypergraph(self.n, tuple(x for x in self.edges if x != t))

    def relabel(self, perm) -> "UniformHypergraph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return UniformHypergraph(self.n, tuple(tuple(perm[v] for v in e) for e in self.edges))

    def induced(self, vertices: Iterable[int]) -> "UniformHypergraph":
        """G[S] on the same vertex set: keeps edges lying inside ``vertices``."""
        s = set(vertices)
        return UniformHypergraph(self.n, tuple(e for e in self.edges if s.issuperset(e)))

    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, 3), dtype=np.intp)
        return np.asarray(self.edges, dtype=np.intp)


@dataclass(frozen=True)
class LinkGraph:
    host: int
    pairs: tuple[Pair, ...]

    def __len__(self):
        return len(self.pairs)


@dataclass(frozen=True)
class ShadowGraph:
    n: int
    edges: tuple[Pair, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a


@dataclass(frozen=True)
class CancellativityReport:
    cancellative: bool
    witness: Optional[tuple[Edge, Edge, Edge]] = None

    def __bool__(self):
        return self.cancellative


def _check_vertex(G: UniformHypergraph, v: int) -> None:
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range [0, {G.n})")


def t3(n: int) -> int:
    """Edge count of the balanced complete 3-partite 3-graph on ``n`` vertices."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return (n // 3) * ((n + 1) // 3) * ((n + 2) // 3)


def turan_parts(n: int) -> list[range]:
    sizes = (n // 3, (n + 1) // 3, (n + 2) // 3)
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    return parts


def complete_tripartite(sizes: Iterable[int]) -> UniformHypergraph:
    """Complete 3-partite 3-graph with the given part sizes on consecutive index ranges."""
    sizes = [int(s) for s in sizes]
    if len(sizes) != 3 or min(sizes) < 0:
        raise ValueError(f"need three nonnegative part sizes, got {sizes}")
    bounds = np.cumsum([0] + sizes)
    parts = [range(bounds[i], bounds[i + 1]) for i in range(3)]
    edges = [(a, b, c) for a in parts[0] for b in parts[1] for c in parts[2]]
    return UniformHypergraph(int(bounds[-1]), tuple(edges))


def turan3(n: int) -> UniformHypergraph:
    """T_3(n), parts of sizes n//3, (n+1)//3, (n+2)//3 in index order."""
    if n < 3:
        raise ValueError(f"turan3 needs n >= 3, got {n}")
    return complete_tripartite((n // 3, (n + 1) // 3, (n + 2) // 3))


def f4(n: int = 4) -> UniformHypergraph:
    """{abc, abd, bcd} with a, b, c, d = 0, 1, 2, 3."""
    if n < 4:
        raise ValueError(f"F4 needs n >= 4, got {n}")
    return UniformHypergraph(n, ((0, 1, 2), (0, 1, 3), (1, 2, 3)))


def f5(n: int = 5) -> UniformHypergraph:
    """{abc, abd, cde} with a, b, c, d, e = 0, 1, 2, 3, 4."""
    if n < 5:
        raise ValueError(f"F5 needs n >= 5, got {n}")
    return UniformHypergraph(n, ((0, 1, 2), (0, 1, 3), (2, 3, 4)))


def empty(n: int) -> UniformHypergraph:
    return UniformHypergraph(n, ())


def link(G: UniformHypergraph, v: int) -> LinkGraph:
    _check_vertex(G, v)
    pairs = sorted(tuple(w for w in e if w != v) for e in G.edges_at(v))
    return LinkGraph(v, tuple(pairs))


def shadow(G: UniformHypergraph) -> ShadowGraph:
    return ShadowGraph(G.n, tuple(sorted(G.pair_index)))


def check_cancellative(G: UniformHypergraph) -> CancellativityReport:
    """Search for distinct edges A, B, C with B xor C inside A.

    Only pairs B, C meeting in two vertices can violate, so the scan walks
    pairs of edges through a shared pair and looks up the two leftover
    vertices in the pair index. The reported witness is the lexicographically
    least (A, B, C) with B < C.
    """
    best = None
    pidx = G.pair_index
    for shared, through in pidx.items():
        if len(through) < 2:
            continue
        for B, C in combinations(through, 2):
            x = next(w for w in B if w not in shared)
            y = next(w for w in C if w not in shared)
            for A in pidx.get((min(x, y), max(x, y)), ()):
                cand = (A, B, C)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return CancellativityReport(True)
    return CancellativityReport(False, best)


def is_cancellative(G: UniformHypergraph) -> bool:
    pidx = G.pair_index
    for shared, through in pidx.items():
        for B, C in combinations(through, 2):
            x = next(w for w in B if w not in shared)
            y = next(w for w in C if w not in shared)
            if (min(x, y), max(x, y)) in pidx:
                return False
    return True


def extension_stays_cancellative(G: UniformHypergraph, t: Edge) -> bool:
    """Whether ``G + t`` is cancellative, given that ``G`` already is.

    Any new violation must use ``t``, either as the covering edge A or as
    one of the pair B, C.
    """
    pidx = G.pair_index
    a, b, c = t
    # t as A: edges P+x and P+y for a pair {x, y} of t
    for x, y in ((a, b), (a, c), (b, c)):
        for e in G.edges_at(x):
            if y in e:
                continue
            q = tuple(sorted([w for w in e if w != x] + [y]))
            if q in G.edge_set:
                return False
    # t as B: C = P+y for a pair P of t; y lies outside t, so t cannot cover {x, y}
    for x in t:
        p = tuple(w for w in t if w != x)
        for C in pidx.get(p, ()):
            y = next(w for w in C if w not in p)
            if (min(x, y), max(x, y)) in pidx:
                return False
    return True


def links_edge_disjoint(G: UniformHypergraph, u: int, v: int) -> bool:
    _check_vertex(G, u)
    _check_vertex(G, v)
    if u == v:
        raise ValueError("u and v must be distinct")
    return not set(link(G, u).pairs) & set(link(G, v).pairs)


def switch(G: UniformHypergraph, u: int, v: int) -> UniformHypergraph:
    """T_v^u(G): drop every edge at ``v``, then copy each edge at ``u`` onto ``v``.

    Edges containing both ``u`` and ``v`` are dropped and not copied, so ``u``
    and ``v`` end up non-adjacent.
    """
    _check_vertex(G, u)
    _check_vertex(G, v)
    if u == v:
        raise ValueError("switch needs u != v")
    kept = [e for e in G.edges if v not in e]
    moved = [tuple(v if w == u else w for w in e) for e in G.edges if u in e and v not in e]
    return UniformHypergraph(G.n, tuple(kept + moved))
