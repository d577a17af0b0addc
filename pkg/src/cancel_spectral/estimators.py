"""Scikit-learn style wrappers around the solvers.

The estimators take a 3-graph (or an ``(m, 3)`` edge array) as ``X`` and
store results in trailing-underscore attributes, so they work with
``get_params``/``set_params``, ``clone`` and grid-search tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .spectral import (SolverConfig, adjacency_matrix, lagrangian_lambda1, motzkin_straus,
                       solve_p_spectral, spectral_profile)
from .validation import check_grid, check_hypergraph, check_p, check_seed


class _SolverParams:
    def _config(self, p: float) -> SolverConfig:
        return SolverConfig(p=p, tolerance=self.tol, max_iterations=self.max_iter,
                            restarts=self.n_restarts, damping=self.damping,
                            rng_seed=check_seed(self.random_state))


class PSpectralRadius(_SolverParams, BaseEstimator):
    """p-spectral radius of a 3-graph.

    ``p > 1`` runs the damped power iteration; ``p = 1`` solves the simplex
    (Lagrangian) problem instead.

    Attributes
    ----------
    lambda_ : float
    eigenvector_ : ndarray of shape (n_vertices,)
    residual_ : float
        Eigen residual, or the projected-gradient norm when ``p = 1``.
    n_iter_ : int
    converged_ : bool
    estimate_ : SpectralEstimate
    """

    def __init__(self, p=3.0, tol=1e-10, max_iter=100_000, n_restarts=16, damping=None,
                 random_state=0):
        self.p = p
        self.tol = tol
        self.max_iter = max_iter
        self.n_restarts = n_restarts
        self.damping = damping
        self.random_state = random_state

    def fit(self, X, y=None):
        G = check_hypergraph(X)
        p = check_p(self.p)
        cfg = self._config(p)
        est = lagrangian_lambda1(G, cfg) if p == 1 else solve_p_spectral(G, cfg)
        self.estimate_ = est
        self.lambda_ = est.lambda_
        self.eigenvector_ = np.array(est.vector.entries)
        self.residual_ = est.residual
        self.n_iter_ = est.iterations
        self.converged_ = est.converged
        self.n_vertices_ = G.n
        return self

    def score(self, X, y=None):
        """The fitted lambda, refit on ``X``."""
        return self.fit(X).lambda_


class SpectralProfile(_SolverParams, TransformerMixin, BaseEstimator):
    """Map a sequence of 3-graphs to their f_G(p) (or lambda_p) on a grid of p.

    ``transform`` returns an array of shape ``(n_graphs, len(p_grid))``;
    ``output="lambda"`` gives the spectral radii, ``output="f"`` gives
    ``(lambda_p / 3m)^p``. Unconverged points are NaN.
    """

    def __init__(self, p_grid=(1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0), output="f", tol=1e-10,
                 max_iter=100_000, n_restarts=16, damping=None, random_state=0):
        self.p_grid = p_grid
        self.output = output
        self.tol = tol
        self.max_iter = max_iter
        self.n_restarts = n_restarts
        self.damping = damping
        self.random_state = random_state

    def fit(self, X=None, y=None):
        self.p_grid_ = check_grid(self.p_grid)
        if self.output not in ("f", "lambda"):
            raise ValueError(f"output must be 'f' or 'lambda', got {self.output!r}")
        return self

    def profile(self, G):
        check_is_fitted(self, "p_grid_")
        return spectral_profile(check_hypergraph(G), self.p_grid_, self._config(float(self.p_grid_[0])))

    def transform(self, X):
        check_is_fitted(self, "p_grid_")
        rows = []
        for G in X:
            pts = self.profile(G)
            rows.append([(pt.f if self.output == "f" else pt.lambda_) if pt.converged else np.nan
                         for pt in pts])
        return np.array(rows, dtype=float).reshape(len(rows), len(self.p_grid_))


class MotzkinStraus(BaseEstimator):
    """Simplex maximum of a graph's edge form; ``omega_`` is the implied clique number."""

    def __init__(self, tol=1e-10, max_iter=100_000, n_restarts=16, random_state=0):
        self.tol = tol
        self.max_iter = max_iter
        self.n_restarts = n_restarts
        self.random_state = random_state

    def fit(self, X, y=None):
        cfg = SolverConfig(p=1.0, tolerance=self.tol, max_iterations=self.max_iter,
                           restarts=self.n_restarts, rng_seed=check_seed(self.random_state))
        n = adjacency_matrix(X).shape[0]
        self.value_ = motzkin_straus(X, cfg)
        if self.value_ > 0:
            self.omega_ = int(round(1.0 / (1.0 - 2.0 * self.value_)))
        else:
            self.omega_ = min(n, 1)
        return self
