"""p-spectral radius tools for cancellative 3-uniform hypergraphs."""

__version__ = "0.1.0"

from .canonical import canonical_key
from .core import (CancellativityReport, LinkGraph, ShadowGraph, UniformHypergraph,
                   UnsupportedSizeError, check_cancellative, complete_tripartite, empty, f4, f5,
                   link, links_edge_disjoint, shadow, switch, t3, turan3)
from .enumeration import (EnumerationReport, enumerate_cancellative, verify_corollary_identity,
                          verify_edge_extremal, verify_lambda1, verify_spectral_extremal)
from .estimators import MotzkinStraus, PSpectralRadius, SpectralProfile
from .hg3 import HG3FormatError, read_hg3, write_hg3
from .spectral import (SolverConfig, SpectralEstimate, WeightVector, clique_number,
                       eigen_residual, lagrangian_lambda1, minimize_support, motzkin_straus,
                       polynomial_form, solve_p_spectral, spectral_profile, support_cover_check,
                       tripartite_closed_form)

__all__ = [
    "CancellativityReport", "EnumerationReport", "HG3FormatError", "LinkGraph", "MotzkinStraus",
    "PSpectralRadius", "ShadowGraph", "SolverConfig", "SpectralEstimate", "SpectralProfile",
    "UniformHypergraph", "UnsupportedSizeError", "WeightVector", "canonical_key",
    "check_cancellative", "clique_number", "complete_tripartite", "eigen_residual", "empty",
    "enumerate_cancellative", "f4", "f5", "lagrangian_lambda1", "link", "links_edge_disjoint",
    "minimize_support", "motzkin_straus", "polynomial_form", "read_hg3", "shadow",
    "solve_p_spectral", "spectral_profile", "support_cover_check", "switch", "t3",
    "tripartite_closed_form", "turan3", "verify_corollary_identity", "verify_edge_extremal",
    "verify_lambda1", "verify_spectral_extremal", "write_hg3",
]
