"""Exact-arithmetic search for closed-form evaluations of terminating
Gauss hypergeometric series F(-a*n, b*n+b0; c*n+c0; x)."""

from .exactalg import (AllXCandidate, CandidateX, Poly, QMatrix, PolyMatrix,
                       QuadCandidate, QuadExt, RatCandidate, Rational,
                       UnresolvedFactor, extract_candidates, nullspace,
                       poly_gcd, polymat_det)
from .guesser import (ALL_ZERO, NO_FIT, NOT_HYPERGEOMETRIC,
                      DegenerateSequenceError, GuessConfig, RatioCertificate,
                      confirm, fit_ratio, guess)
from .hyperseries import (FamilySpec, LinearSlot, definedness,
                          eval_terminating, pochhammer, series_poly_in_x)
from .xsolver import UndefinedRowError, build_fit_matrix_x, solve_x

__all__ = [
    "ALL_ZERO", "AllXCandidate", "CandidateX", "DegenerateSequenceError",
    "FamilySpec", "GuessConfig", "LinearSlot", "NO_FIT", "NOT_HYPERGEOMETRIC",
    "Poly", "PolyMatrix", "QMatrix", "QuadCandidate", "QuadExt",
    "RatCandidate", "Rational", "RatioCertificate", "UndefinedRowError",
    "UnresolvedFactor", "build_fit_matrix_x", "confirm", "definedness",
    "eval_terminating", "extract_candidates", "fit_ratio", "guess",
    "nullspace", "pochhammer", "poly_gcd", "polymat_det", "series_poly_in_x",
    "solve_x",
]

__version__ = "0.1.0"
