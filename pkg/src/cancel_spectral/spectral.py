"""p-spectral radius of 3-graphs and the related simplex optimizations.

For a 3-graph G the polynomial form is ``P(x) = 3 * sum_{ijk in E} x_i x_j x_k``
and ``lambda_p(G)`` is its maximum over the nonnegative unit l^p sphere. For
``p > 1`` the maximizers satisfy ``lambda * x_i^(p-1) = s_i(x)`` on the
support, where ``s_i(x) = sum_{ijk in E} x_j x_k``; :func:`solve_p_spectral`
iterates that stationarity condition as a damped fixed point. ``p = 1`` is the
Lagrangian problem on the simplex and goes through :func:`lagrangian_lambda1`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import ShadowGraph, UniformHypergraph, UnsupportedSizeError

logger = logging.getLogger(__name__)

NORM_TOL = 1e-12
MAX_ORACLE_N = 12
MAX_CLIQUE_N = 12
FREEZE_AFTER = 50
MIN_DAMPING = 1.0 / 64
GROWTH_STEPS = 5000
STALL_WINDOW = 100
STALL_GAIN = 1e-13


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative vector on the unit l^p sphere (``p = 1`` is the simplex)."""

    entries: np.ndarray
    p: float

    def __post_init__(self):
        x = np.array(self.entries, dtype=float)
        if x.ndim != 1:
            raise ValueError("entries must be one-dimensional")
        if np.any(x < 0) or not np.all(np.isfinite(x)):
            raise ValueError("entries must be finite and nonnegative")
        norm = lp_norm(x, self.p)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"||x||_{self.p} = {norm!r}, expected 1 within {NORM_TOL}")
        x.setflags(write=False)
        object.__setattr__(self, "entries", x)
        object.__setattr__(self, "p", float(self.p))

    @property
    def norm_kind(self) -> str:
        return "simplex" if self.p == 1 else f"l{self.p:g}-sphere"

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.entries))

    def __len__(self):
        return len(self.entries)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    @classmethod
    def normalized(cls, x, p: float) -> "WeightVector":
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        norm = lp_norm(x, p)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        x = x / norm
        # one more pass absorbs the rounding of the first division
        return cls(x / lp_norm(x, p), p)


@dataclass(frozen=True)
class SolverConfig:
    """Settings for the p-spectral and simplex solvers.

    ``damping=None`` selects 1.0 for ``p >= 3`` and 0.5 for ``1 < p < 3``.
    """

    p: float = 3.0
    tolerance: float = 1e-10
    max_iterations: int = 100_000
    restarts: int = 16
    damping: Optional[float] = None
    rng_seed: int = 0

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.damping is not None and not 0 < self.damping <= 1:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")

    @property
    def gamma(self) -> float:
        if self.damping is not None:
            return float(self.damping)
        return 1.0 if self.p >= 3 else 0.5

    def with_p(self, p: float) -> "SolverConfig":
        return SolverConfig(p, self.tolerance, self.max_iterations, self.restarts,
                            self.damping, self.rng_seed)


@dataclass(frozen=True)
class SpectralEstimate:
    lambda_: float
    vector: WeightVector
    residual: float
    iterations: int
    restarts_used: int
    converged: bool
    run_lambdas: tuple[float, ...] = field(default=(), repr=False)

    @property
    def p(self) -> float:
        return self.vector.p


@dataclass(frozen=True)
class ProfilePoint:
    p: float
    lambda_: float
    f: float
    converged: bool


# ---------------------------------------------------------------------------
# polynomial form and its derivatives


def lp_norm(x, p: float) -> float:
    x = np.abs(np.asarray(x, dtype=float))
    if p == 1:
        return float(x.sum())
    if math.isinf(p):
        return float(x.max()) if x.size else 0.0
    top = x.max() if x.size else 0.0
    if top == 0:
        return 0.0
    return float(top * np.sum((x / top) ** p) ** (1.0 / p))


class _EdgeOperator:
    """Batched evaluation of P and of the per-vertex sums s_i for a fixed edge list."""

    def __init__(self, G: UniformHypergraph):
        self.n, self.m = G.n, G.m
        e = G.edge_array()
        self.a, self.b, self.c = e[:, 0], e[:, 1], e[:, 2]
        inc = np.zeros((3, self.m, self.n))
        rows = np.arange(self.m)
        for k in range(3):
            inc[k, rows, e[:, k]] = 1.0
        self.inc = inc

    def sums(self, X: np.ndarray) -> np.ndarray:
        """s_i = sum over edges {i, j, k} of x_j x_k, for each row of X."""
        Xa, Xb, Xc = X[..., self.a], X[..., self.b], X[..., self.c]
        return (Xb * Xc) @ self.inc[0] + (Xa * Xc) @ self.inc[1] + (Xa * Xb) @ self.inc[2]

    def form(self, X: np.ndarray) -> np.ndarray:
        return 3.0 * np.sum(X[..., self.a] * X[..., self.b] * X[..., self.c], axis=-1)


def _as_vector(G: UniformHypergraph, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (G.n,):
        raise ValueError(f"vector has shape {arr.shape}, expected ({G.n},)")
    return arr


def polynomial_form(G: UniformHypergraph, x) -> float:
    """P_G(x) = 3 * sum over edges of x_i x_j x_k."""
    x = _as_vector(G, x)
    if G.m == 0:
        return 0.0
    return float(_EdgeOperator(G).form(x))


def vertex_sums(G: UniformHypergraph, x) -> np.ndarray:
    """The vector s with s_i = sum_{ijk in E} x_j x_k (so grad P = 3 s)."""
    x = _as_vector(G, x)
    if G.m == 0:
        return np.zeros(G.n)
    return _EdgeOperator(G).sums(x)


def eigen_residual(G: UniformHypergraph, p: float, lam: float, x) -> float:
    """max over supported i of |lam * x_i^(p-1) - s_i(x)|."""
    if not p > 1:
        raise ValueError("eigen_residual needs p > 1; use the simplex path for p = 1")
    x = _as_vector(G, x)
    s = vertex_sums(G, x)
    on = x > 0
    if not on.any():
        return 0.0
    return float(np.max(np.abs(lam * x[on] ** (p - 1) - s[on])))


def tripartite_closed_form(m: int, p: float) -> float:
    """lambda_p of a complete 3-partite 3-graph with m edges: (27m)^(1-1/p) / 9."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not p > 1:
        raise ValueError(f"p must be > 1, got {p}")
    if math.isinf(p):
        return 3.0 * m
    return (27.0 * m) ** (1.0 - 1.0 / p) / 9.0


# ---------------------------------------------------------------------------
# p > 1: damped fixed-point iteration


def _starting_points(n: int, count: int, p: float, seed: int,
                     extra: Sequence = ()) -> np.ndarray:
    rng = np.random.default_rng(seed)
    rows = [np.ones(n)]
    if count > 1:
        rows.extend(rng.dirichlet(np.ones(n), size=count - 1))
    for v in extra:
        rows.append(np.maximum(np.asarray(v, dtype=float), 0.0))
    X = np.array(rows, dtype=float)
    norms = np.array([lp_norm(r, p) for r in X])
    keep = norms > 0
    return X[keep] / norms[keep, None]


def _row_residuals(lam, X, S, p):
    R = np.where(X > 0, np.abs(lam[:, None] * X ** (p - 1) - S), 0.0)
    return R.max(axis=1)


def solve_p_spectral(G: UniformHypergraph, cfg: SolverConfig,
                     initial_vectors: Iterable = ()) -> SpectralEstimate:
    """Estimate lambda_p(G) for p > 1 by multi-start damped power iteration.

    Each start performs ``y_i = ((1-g) lam x_i^(p-1) + g s_i)^(1/(p-1))``
    followed by l^p normalization, with ``lam = P(x)``, until the eigen
    residual drops below ``cfg.tolerance``. A run whose ``P(x)`` decreases
    has its damping halved. Starts are the uniform vector, ``restarts - 1``
    Dirichlet draws and any ``initial_vectors``; the returned estimate is the
    converged run with the largest lambda, ties going to the earlier start.
    The value is a certified critical value, not a certified global maximum.
    """
    p = float(cfg.p)
    if not p > 1:
        raise ValueError("solve_p_spectral needs p > 1; use lagrangian_lambda1 for p = 1")
    if G.n == 0:
        raise ValueError("graph has no vertices")
    if G.m == 0:
        x = WeightVector.normalized(np.ones(G.n), p)
        return SpectralEstimate(0.0, x, 0.0, 0, 0, True, (0.0,))

    op = _EdgeOperator(G)
    X = _starting_points(G.n, cfg.restarts, p, cfg.rng_seed, tuple(initial_vectors))
    R = X.shape[0]
    q = 1.0 / (p - 1.0)
    gamma = np.full(R, cfg.gamma)
    active = np.ones(R, dtype=bool)
    converged = np.zeros(R, dtype=bool)
    iters = np.zeros(R, dtype=int)
    zero_run = np.zeros(X.shape, dtype=int)
    lam_prev = np.full(R, -np.inf)
    lam = np.zeros(R)
    resid = np.full(R, np.inf)

    for it in range(cfg.max_iterations + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa = X[idx]
        S = op.sums(Xa)
        la = np.sum(Xa * S, axis=1)
        ra = _row_residuals(la, Xa, S, p)
        lam[idx], resid[idx], iters[idx] = la, ra, it
        done = ra <= cfg.tolerance
        converged[idx[done]] = True
        if it == cfg.max_iterations:
            break
        active[idx[done]] = False
        keep = ~done
        idx, Xa, S, la = idx[keep], Xa[keep], S[keep], la[keep]
        if idx.size == 0:
            break

        dropped = la < lam_prev[idx] - 1e-12 * np.maximum(1.0, np.abs(la))
        if dropped.any():
            gamma[idx[dropped]] = np.maximum(gamma[idx[dropped]] * 0.5, MIN_DAMPING)
        lam_prev[idx] = la

        zr = np.where(S == 0, zero_run[idx] + 1, 0)
        zero_run[idx] = zr
        g = gamma[idx][:, None]
        Y = ((1.0 - g) * la[:, None] * Xa ** (p - 1) + g * S) ** q
        Y[zr >= FREEZE_AFTER] = 0.0
        norms = np.array([lp_norm(y, p) for y in Y])
        bad = norms == 0
        if bad.any():
            active[idx[bad]] = False
        Y[~bad] /= norms[~bad, None]
        X[idx[~bad]] = Y[~bad]

    pool = np.flatnonzero(converged) if converged.any() else np.arange(R)
    top = lam[pool].max()
    best = int(pool[np.flatnonzero(lam[pool] >= top - 1e-12 * max(1.0, top))[0]])
    x = WeightVector.normalized(X[best], p)
    lam_best = polynomial_form(G, x.entries)
    res = eigen_residual(G, p, lam_best, x.entries)
    ok = bool(converged[best]) and res <= cfg.tolerance
    if not ok:
        logger.debug("p-spectral solve did not converge (best residual %.3g)", res)
    return SpectralEstimate(lam_best, x, res, int(iters[best]), R, ok,
                            tuple(float(v) for v in lam))


# ---------------------------------------------------------------------------
# p = 1: simplex problems


def project_simplex(Y: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    n = Y.shape[1]
    U = -np.sort(-Y, axis=1)
    css = np.cumsum(U, axis=1) - 1.0
    ks = np.arange(1, n + 1)
    cond = U - css / ks > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(Y.shape[0]), rho] / (rho + 1)
    return np.maximum(Y - theta[:, None], 0.0)


def _pg_norm(x: np.ndarray, grad: np.ndarray) -> float:
    return float(np.max(np.abs(project_simplex(x + grad)[0] - x)))


def _projected_ascent(grad_fn, value_fn, X: np.ndarray, step: float, tol: float,
                      max_iter: int):
    """Fixed-step projected gradient ascent on the simplex, all rows at once."""
    active = np.ones(X.shape[0], dtype=bool)
    iters = np.zeros(X.shape[0], dtype=int)
    checkpoint = value_fn(X)
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa = X[idx]
        Xn = project_simplex(Xa + step * grad_fn(Xa))
        delta = np.max(np.abs(Xn - Xa), axis=1)
        X[idx] = Xn
        iters[idx] = it
        active[idx[delta <= tol * step]] = False
        if it % STALL_WINDOW == 0:
            # sublinear crawl along a flat set of maximizers
            v = value_fn(X[idx])
            active[idx[v - checkpoint[idx] <= STALL_GAIN]] = False
            checkpoint[idx] = v
    return X, value_fn(X), iters


def _replicator(op: _EdgeOperator, x: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Baum-Eagon growth transform x_i <- x_i s_i / P; never decreases P."""
    for _ in range(max_iter):
        s = op.sums(x)
        tot = float(np.dot(x, s))
        if tot <= 0:
            return x
        y = x * s / tot
        if np.max(np.abs(y - x)) <= tol:
            return y
        x = y
    return x


def covering_supports(G: UniformHypergraph) -> list[tuple[int, ...]]:
    """Vertex sets S (|S| >= 3) in which every pair lies in an edge of G[S]."""
    if G.n > MAX_ORACLE_N:
        raise UnsupportedSizeError(f"support enumeration supports n <= {MAX_ORACLE_N}")
    masks = [sum(1 << v for v in e) for e in G.edges]
    out = []
    for S in range(1 << G.n):
        verts = [v for v in range(G.n) if S >> v & 1]
        if len(verts) < 3:
            continue
        covered = set()
        for e, mk in zip(G.edges, masks):
            if mk & S == mk:
                covered.update(((e[0], e[1]), (e[0], e[2]), (e[1], e[2])))
        if all(pq in covered for pq in combinations(verts, 2)):
            out.append(tuple(verts))
    return out


def _lagrangian_oracle(G: UniformHypergraph, op: _EdgeOperator, tol: float,
                       max_iter: int) -> np.ndarray:
    best_x, best_val = None, -1.0
    for S in covering_supports(G):
        x = np.zeros(G.n)
        x[list(S)] = 1.0 / len(S)
        for cand in (x, _replicator(op, x.copy(), tol, min(max_iter, GROWTH_STEPS))):
            val = float(op.form(cand))
            if val > best_val + 1e-15:
                best_x, best_val = cand.copy(), val
    return best_x


def lagrangian_lambda1(G: UniformHypergraph, cfg: Optional[SolverConfig] = None) -> SpectralEstimate:
    """lambda_1(G): the maximum of P_G over the simplex (three times the Lagrangian).

    Runs multi-start projected gradient ascent and, for ``n <= 12``, an
    enumeration over pair-covering supports (uniform weights plus a growth
    transform from the uniform point of each support). The better point
    wins. ``residual`` holds the projected-gradient norm at that point.
    """
    cfg = cfg or SolverConfig(p=1.0)
    if G.n == 0:
        raise ValueError("graph has no vertices")
    if G.m == 0:
        return SpectralEstimate(0.0, WeightVector.normalized(np.ones(G.n), 1.0), 0.0, 0, 0, True, (0.0,))
    op = _EdgeOperator(G)
    step = 1.0 / (3.0 * max(G.degrees()))
    X0 = _starting_points(G.n, cfg.restarts, 1.0, cfg.rng_seed)
    X, vals, iters = _projected_ascent(lambda X: 3.0 * op.sums(X), op.form, X0, step,
                                       cfg.tolerance, cfg.max_iterations)
    cands = [(X[i], int(iters[i])) for i in range(X.shape[0])]
    if G.n <= MAX_ORACLE_N:
        y = _lagrangian_oracle(G, op, cfg.tolerance, cfg.max_iterations)
        if y is not None:
            cands.append((y, 0))
    scored = []
    for x, it in cands:
        vec = WeightVector.normalized(x, 1.0)
        scored.append((float(op.form(vec.entries)), _pg_norm(vec.entries, 3.0 * op.sums(vec.entries)), vec, it))
    top = max(v for v, *_ in scored)
    # among near-ties prefer the best certified stationary point
    lam, pg, vec, n_it = min((c for c in scored if c[0] >= top - 1e-12), key=lambda c: c[1])
    return SpectralEstimate(lam, vec, pg, n_it, X0.shape[0], pg <= cfg.tolerance,
                            tuple(float(v) for v in vals))


def support_cover_check(G: UniformHypergraph, x) -> bool:
    """True iff every pair of supported vertices lies in an edge of G[support]."""
    arr = _as_vector(G, x)
    S = set(np.flatnonzero(arr > 0).tolist())
    inner = G.induced(S).pair_index
    return all(pq in inner for pq in combinations(sorted(S), 2))


def minimize_support(G: UniformHypergraph, x) -> WeightVector:
    """Shrink the support of a simplex point without lowering P_G.

    When two supported vertices u, v share no edge inside the support, P is
    linear along e_u - e_v, so all weight can move onto whichever of the two
    has the larger partial derivative.
    """
    x = _as_vector(G, x).copy()
    while True:
        S = sorted(np.flatnonzero(x > 0).tolist())
        inner = G.induced(S).pair_index
        gap = next((pq for pq in combinations(S, 2) if pq not in inner), None)
        if gap is None:
            return WeightVector.normalized(x, 1.0)
        u, v = gap
        s = vertex_sums(G, x)
        if s[u] >= s[v]:
            x[u], x[v] = x[u] + x[v], 0.0
        else:
            x[v], x[u] = x[u] + x[v], 0.0


# ---------------------------------------------------------------------------
# graphs: Motzkin-Straus and clique number


def adjacency_matrix(H) -> np.ndarray:
    if isinstance(H, ShadowGraph):
        return H.adjacency()
    A = np.asarray(H)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a ShadowGraph or a square adjacency matrix")
    A = A.astype(bool)
    if np.any(A != A.T) or np.any(np.diag(A)):
        raise ValueError("adjacency matrix must be symmetric with an empty diagonal")
    return A


def motzkin_straus(H, cfg: Optional[SolverConfig] = None) -> float:
    """Maximum of sum_{uv in E} x_u x_v over the simplex, by projected gradient.

    Starts are the uniform point, Dirichlet draws and the uniform point on
    each closed neighbourhood.
    """
    cfg = cfg or SolverConfig(p=1.0)
    A = adjacency_matrix(H).astype(float)
    n = A.shape[0]
    if n == 0 or not A.any():
        return 0.0
    X0 = _starting_points(n, cfg.restarts, 1.0, cfg.rng_seed,
                          extra=[A[v] + np.eye(n)[v] for v in range(n)])
    step = 1.0 / max(1.0, A.sum(axis=1).max())
    X, vals, _ = _projected_ascent(lambda X: X @ A, lambda X: 0.5 * np.einsum("ri,ij,rj->r", X, A, X),
                                   X0, step, min(cfg.tolerance, 1e-12), cfg.max_iterations)
    return float(vals.max())


def clique_number(H) -> int:
    """omega(H) by branch and bound over bitmask candidate sets."""
    A = adjacency_matrix(H)
    n = A.shape[0]
    if n > MAX_CLIQUE_N:
        raise UnsupportedSizeError(f"clique_number supports n <= {MAX_CLIQUE_N}, got {n}")
    nbr = [sum(1 << int(j) for j in np.flatnonzero(A[i])) for i in range(n)]
    best = 0

    def grow(size, cand):
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            grow(size + 1, cand & nbr[v])

    grow(0, (1 << n) - 1)
    return best


# ---------------------------------------------------------------------------
# f_G(p) profile


def spectral_profile(G: UniformHypergraph, p_grid: Sequence[float],
                     cfg: Optional[SolverConfig] = None) -> list[ProfilePoint]:
    """lambda_p and f_G(p) = (lambda_p / (3m))^p on an increasing grid of p > 1.

    Every grid point is solved twice: once from the standard starts and once
    more seeded with the eigenvectors found at all other grid points. The
    larger converged value is kept.
    """
    cfg = cfg or SolverConfig()
    grid = [float(p) for p in p_grid]
    if G.m == 0:
        raise ValueError("f_G(p) is undefined for a graph without edges")
    if not grid or any(p <= 1 for p in grid):
        raise ValueError("grid points must be > 1")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    first = [solve_p_spectral(G, cfg.with_p(p)) for p in grid]
    seeds = [est.vector.entries for est in first]
    out = []
    for p, est in zip(grid, first):
        again = solve_p_spectral(G, cfg.with_p(p), initial_vectors=seeds)
        if again.converged and (not est.converged or again.lambda_ > est.lambda_):
            est = again
        f = (est.lambda_ / (3.0 * G.m)) ** p
        out.append(ProfilePoint(p, est.lambda_, f, est.converged))
    return out


def is_nonincreasing(values: Sequence[float], slack: float = 1e-7) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))
