"""Isomorph-free generation of cancellative 3-graphs and the small-n verification campaigns."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from .canonical import CanonicalKey, canonical_key
from .core import (UniformHypergraph, UnsupportedSizeError, extension_stays_cancellative,
                   t3, turan3)
from .spectral import SolverConfig, SpectralEstimate, lagrangian_lambda1, solve_p_spectral

logger = logging.getLogger(__name__)

MIN_N, MAX_N = 3, 7
MAX_SPECTRAL_N = 6

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class ClassRecord:
    """One isomorphism class: its key, a representative and its one-edge extensions."""

    key: CanonicalKey
    graph: UniformHypergraph
    children: tuple[CanonicalKey, ...] = ()

    @property
    def m(self) -> int:
        return self.graph.m


@dataclass
class EnumerationReport:
    n: int
    count_cancellative: int
    max_edges: int
    edge_extremal_keys: list[CanonicalKey]
    spectral_p: Optional[float] = None
    max_lambda: Optional[float] = None
    spectral_extremal_keys: Optional[list[CanonicalKey]] = None
    status: str = PASS
    margin: Optional[float] = None
    rows: list[dict] = field(default_factory=list, repr=False)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def summary(self) -> dict:
        out = {
            "n": self.n,
            "count_cancellative": self.count_cancellative,
            "max_edges": self.max_edges,
            "t3": t3(self.n),
            "edge_extremal_keys": [k.hex() for k in self.edge_extremal_keys],
            "status": self.status,
        }
        if self.spectral_p is not None:
            out.update(
                spectral_p=self.spectral_p,
                max_lambda=self.max_lambda,
                spectral_extremal_keys=[k.hex() for k in self.spectral_extremal_keys or []],
                margin=self.margin,
            )
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["key", "m"] + sorted({c for r in self.rows for c in r} - {"key", "m"})
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in sorted(self.rows, key=lambda r: r["key"]):
            w.writerow(r)
        return buf.getvalue()


def _check_n(n: int, hi: int = MAX_N) -> None:
    if not MIN_N <= n <= hi:
        raise UnsupportedSizeError(f"n must lie in [{MIN_N}, {hi}], got {n}")


def cancellative_classes(n: int, threads: int = 1) -> dict[CanonicalKey, ClassRecord]:
    """All isomorphism classes of cancellative 3-graphs on n vertices, keyed canonically.

    Classes are grown one edge at a time: a class with m + 1 edges is reached
    from any of its m-edge subgraphs, which are cancellative as well, so
    extending every m-edge class by every admissible triple and deduplicating
    by canonical key is complete.
    """
    _check_n(n)
    triples = list(combinations(range(n), 3))
    root = UniformHypergraph(n, ())
    level = {canonical_key(root): root}
    children: dict[CanonicalKey, list[CanonicalKey]] = {}
    classes: dict[CanonicalKey, UniformHypergraph] = dict(level)

    def expand(item):
        key, G = item
        found = {}
        for t in triples:
            if t in G.edge_set or not extension_stays_cancellative(G, t):
                continue
            H = G.add_edge(t)
            found.setdefault(canonical_key(H), H)
        return key, found

    while level:
        nxt: dict[CanonicalKey, UniformHypergraph] = {}
        items = sorted(level.items())
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                results = list(pool.map(expand, items))
        else:
            results = [expand(it) for it in items]
        for key, found in results:
            children[key] = sorted(found)
            for k in sorted(found):
                nxt.setdefault(k, found[k])
        classes.update(nxt)
        level = nxt
    return {k: ClassRecord(k, classes[k], tuple(children.get(k, ()))) for k in sorted(classes)}


def enumerate_cancellative(n: int, callback: Optional[Callable[[UniformHypergraph], None]] = None,
                           threads: int = 1) -> int:
    """Call ``callback`` once per isomorphism class (empty graph included); return the count."""
    classes = cancellative_classes(n, threads)
    if callback is not None:
        for rec in classes.values():
            callback(rec.graph)
    return len(classes)


def verify_edge_extremal(n: int, threads: int = 1) -> EnumerationReport:
    classes = cancellative_classes(n, threads)
    top = max(rec.m for rec in classes.values())
    keys = [k for k, rec in classes.items() if rec.m == top]
    ok = top == t3(n) and keys == [canonical_key(turan3(n))]
    rows = [{"key": k.hex(), "m": rec.m} for k, rec in classes.items()]
    return EnumerationReport(n, len(classes), top, keys, status=PASS if ok else FAIL, rows=rows)


def _solve_all(graphs: Sequence[UniformHypergraph], solve, threads: int) -> list[SpectralEstimate]:
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(solve, graphs))
    return [solve(G) for G in graphs]


def verify_spectral_extremal(n: int, p: float, cfg: Optional[SolverConfig] = None,
                             threads: int = 1, prefilter: bool = False,
                             allow_large: bool = False) -> EnumerationReport:
    """Exhaustive check that T_3(n) is the unique lambda_p maximizer among cancellative classes.

    With ``prefilter`` a class is skipped when it has a one-edge extension
    inside the family, since adding an edge never lowers lambda_p; only the
    classes with no cancellative extension, plus T_3(n), are solved. Passing
    needs a unique argmax equal to T_3(n) with margin above 10 * tolerance.
    Any unconverged solve makes the result inconclusive.
    """
    _check_n(n, MAX_N if allow_large else MAX_SPECTRAL_N)
    if not p >= 3:
        raise ValueError(f"spectral verification covers p >= 3, got {p}")
    cfg = (cfg or SolverConfig()).with_p(p)
    classes = cancellative_classes(n, threads)
    target = canonical_key(turan3(n))
    todo = [k for k, rec in classes.items() if rec.m > 0 and (not prefilter or not rec.children or k == target)]
    ests = _solve_all([classes[k].graph for k in todo], lambda G: solve_p_spectral(G, cfg), threads)
    lam = {k: e for k, e in zip(todo, ests)}

    rows = []
    for k, rec in classes.items():
        row = {"key": k.hex(), "m": rec.m}
        if k in lam:
            row[f"lambda_p{p:g}"] = f"{lam[k].lambda_:.12f}"
            row["converged"] = int(lam[k].converged)
        rows.append(row)

    best = max(e.lambda_ for e in ests)
    tol = 10 * cfg.tolerance
    winners = sorted(k for k, e in lam.items() if e.lambda_ >= best - tol)
    others = [e.lambda_ for k, e in lam.items() if k not in winners]
    margin = best - max(others) if others else math.inf
    unconverged = sorted(k for k, e in lam.items() if not e.converged)
    top = max(rec.m for rec in classes.values())
    rep = EnumerationReport(n, len(classes), top, [k for k, r in classes.items() if r.m == top],
                            spectral_p=float(p), max_lambda=best, spectral_extremal_keys=winners,
                            margin=margin, rows=rows)
    if unconverged:
        rep.status = INCONCLUSIVE
        rep.notes.append(f"{len(unconverged)} classes did not converge")
    elif winners == [target] and margin > tol:
        rep.status = PASS
    else:
        rep.status = FAIL
    return rep


@dataclass
class Lambda1Summary:
    n: int
    checked: int
    max_deviation: float
    failures: list[CanonicalKey]
    unconverged: list[CanonicalKey]
    status: str
    rows: list[dict] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def summary(self) -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "max_deviation": self.max_deviation,
            "failures": [k.hex() for k in self.failures],
            "unconverged": [k.hex() for k in self.unconverged],
            "status": self.status,
        }


def verify_lambda1(n: int, sample: Optional[int] = None, cfg: Optional[SolverConfig] = None,
                   threads: int = 1, atol: float = 1e-6) -> Lambda1Summary:
    """Check lambda_1(G) = 1/9 on (a seeded sample of) the classes with at least one edge."""
    _check_n(n)
    cfg = (cfg or SolverConfig(p=1.0)).with_p(1.0)
    classes = cancellative_classes(n, threads)
    keys = [k for k, rec in classes.items() if rec.m > 0]
    if sample is not None and sample < len(keys):
        rng = np.random.default_rng(cfg.rng_seed)
        keys = sorted(keys[i] for i in rng.choice(len(keys), size=sample, replace=False))
    ests = _solve_all([classes[k].graph for k in keys], lambda G: lagrangian_lambda1(G, cfg), threads)
    dev = {k: abs(e.lambda_ - 1 / 9) for k, e in zip(keys, ests)}
    failures = sorted(k for k, d in dev.items() if d > atol)
    unconverged = sorted(k for k, e in zip(keys, ests) if not e.converged)
    rows = [{"key": k.hex(), "m": classes[k].m, "lambda_p1": f"{e.lambda_:.12f}",
             "converged": int(e.converged)} for k, e in zip(keys, ests)]
    status = FAIL if failures else (INCONCLUSIVE if unconverged else PASS)
    return Lambda1Summary(n, len(keys), max(dev.values(), default=0.0), failures, unconverged,
                          status, rows)


@dataclass
class CorollarySummary:
    n: int
    identity_holds: bool
    lower_violations: list[CanonicalKey]
    upper_violations: list[CanonicalKey]
    unconverged: list[CanonicalKey]
    status: str

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def summary(self) -> dict:
        return {
            "n": self.n,
            "identity_holds": self.identity_holds,
            "lower_violations": [k.hex() for k in self.lower_violations],
            "upper_violations": [k.hex() for k in self.upper_violations],
            "unconverged": [k.hex() for k in self.unconverged],
            "status": self.status,
        }


def corollary_identity(n: int) -> bool:
    """(n/3) * t3(n)^(2/3) == t3(n), in exact integer arithmetic for n divisible by 3."""
    if n % 3:
        raise ValueError(f"n must be a multiple of 3, got {n}")
    k = n // 3
    # t3(n) = k^3, so t3(n)^(2/3) = k^2
    return k ** 3 == t3(n) and k * k ** 2 == t3(n)


def verify_corollary_identity(n: int, cfg: Optional[SolverConfig] = None, threads: int = 1,
                              slack: float = 1e-9) -> CorollarySummary:
    """3m/n <= lambda_3(G) <= t3(n)^(2/3) on every cancellative class, plus the exact identity."""
    if n % 3:
        raise ValueError(f"n must be a multiple of 3, got {n}")
    _check_n(n, MAX_SPECTRAL_N)
    cfg = (cfg or SolverConfig()).with_p(3.0)
    classes = cancellative_classes(n, threads)
    keys = list(classes)
    ests = _solve_all([classes[k].graph for k in keys], lambda G: solve_p_spectral(G, cfg), threads)
    upper = t3(n) ** (2.0 / 3.0)
    low, up, unc = [], [], []
    for k, e in zip(keys, ests):
        m = classes[k].m
        if e.lambda_ < 3.0 * m / n - slack:
            low.append(k)
        if e.lambda_ > upper + slack:
            up.append(k)
        if not e.converged:
            unc.append(k)
    ident = corollary_identity(n)
    status = FAIL if (low or up or not ident) else (INCONCLUSIVE if unc else PASS)
    return CorollarySummary(n, ident, low, up, unc, status)
