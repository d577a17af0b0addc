"""Canonical keys for small 3-graphs.

The key is the lexicographically least encoding of the relabeled edge list
over the leaves of an individualization-refinement search. Vertex orderings
are restricted to those compatible with an invariant color refinement, and
branches on vertices related by a transposition automorphism are skipped.
"""

from __future__ import annotations

from .core import UniformHypergraph, UnsupportedSizeError

MAX_CANONICAL_N = 10

CanonicalKey = bytes


def _refine(G: UniformHypergraph, cells: list[list[int]]) -> list[list[int]]:
    links = [[tuple(w for w in e if w != v) for e in G.edges_at(v)] for v in range(G.n)]
    while True:
        color = [0] * G.n
        for i, cell in enumerate(cells):
            for v in cell:
                color[v] = i
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(tuple(sorted((color[a], color[b]))) for a, b in links[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
            for sig in sorted(groups):
                out.append(groups[sig])
        cells = out
        if not split:
            return cells


def _twin_classes(G: UniformHypergraph) -> list[int]:
    """Representative of each vertex under 'transposing u, v is an automorphism'."""
    rep = list(range(G.n))
    es = G.edge_set
    for v in range(G.n):
        for u in range(v):
            if rep[u] != u:
                continue
            swap = {u: v, v: u}
            if all(tuple(sorted(swap.get(w, w) for w in e)) in es for e in G.edges):
                rep[v] = u
                break
    return rep


def _encode(G: UniformHypergraph, order: list[int]) -> bytes:
    label = [0] * G.n
    for i, v in enumerate(order):
        label[v] = i
    edges = sorted(tuple(sorted(label[v] for v in e)) for e in G.edges)
    return bytes([G.n, G.m]) + bytes(v for e in edges for v in e)


def canonical_key(G: UniformHypergraph) -> CanonicalKey:
    """Isomorphism-class identifier: equal keys iff the graphs are isomorphic."""
    if G.n > MAX_CANONICAL_N:
        raise UnsupportedSizeError(f"canonical_key supports n <= {MAX_CANONICAL_N}, got {G.n}")
    if G.n == 0:
        return bytes([0, 0])
    rep = _twin_classes(G)
    best: list[bytes] = []

    def search(cells):
        cells = _refine(G, cells)
        if len(cells) == G.n:
            code = _encode(G, [c[0] for c in cells])
            if not best or code < best[0]:
                best[:] = [code]
            return
        i = next(k for k, c in enumerate(cells) if len(c) > 1)
        cell = cells[i]
        seen = set()
        for v in cell:
            if rep[v] in seen:
                continue
            seen.add(rep[v])
            rest = [w for w in cell if w != v]
            search(cells[:i] + [[v], rest] + cells[i + 1:])

    search([list(range(G.n))])
    return best[0]
