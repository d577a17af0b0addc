"""Input validation shared by the estimators and the CLI."""

from __future__ import annotations

import math
from numbers import Integral, Real

import numpy as np

from .core import UniformHypergraph


def check_hypergraph(X, n=None) -> UniformHypergraph:
    """Coerce ``X`` to a :class:`UniformHypergraph`.

    Accepts a hypergraph (returned unchanged unless ``n`` disagrees) or an
    integer array-like of shape ``(m, 3)``. For arrays, ``n`` defaults to one
    more than the largest vertex index.
    """
    if isinstance(X, UniformHypergraph):
        if n is not None and n != X.n:
            raise ValueError(f"hypergraph has {X.n} vertices, expected {n}")
        return X
    arr = np.asarray(X)
    if arr.size == 0:
        arr = arr.reshape(0, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected an edge array of shape (m, 3), got {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("edge array must hold integer vertex indices")
        arr = arr.astype(np.int64)
    if n is None:
        n = int(arr.max()) + 1 if arr.size else 0
    return UniformHypergraph(int(n), tuple(map(tuple, arr.tolist())))


def check_p(p, *, allow_one: bool = True) -> float:
    if isinstance(p, bool) or not isinstance(p, Real) or math.isnan(p):
        raise TypeError(f"p must be a real number, got {p!r}")
    p = float(p)
    if p < 1 or (p == 1 and not allow_one) or math.isinf(p):
        bound = ">= 1" if allow_one else "> 1"
        raise ValueError(f"p must be finite and {bound}, got {p}")
    return p


def check_grid(p_grid) -> np.ndarray:
    grid = np.asarray(p_grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("p grid is empty")
    for p in grid:
        check_p(float(p), allow_one=False)
    if np.any(np.diff(grid) <= 0):
        raise ValueError("p grid must be strictly increasing")
    return grid


def check_seed(seed) -> int:
    if seed is None:
        return 0
    if isinstance(seed, bool) or not isinstance(seed, Integral) or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)
