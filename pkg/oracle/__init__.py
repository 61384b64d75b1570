"""Independent checks: finite differences, quadrature cross-checks, exact identities."""
from oracle.crosscheck import (
    ConvergenceRow,
    CrosscheckRow,
    TriangleReport,
    closed_form_derivative,
    convergence_sweep,
    fold_perturbation,
    geometric_steps,
    oracle_triangle,
    quadrature_crosscheck,
    quadrature_derivative,
)
from oracle.finite_difference import DerivativeEstimate, fd_derivative, richardson_extrapolate
from oracle.identity import alternating_binomial_moment

__all__ = [
    "ConvergenceRow",
    "CrosscheckRow",
    "DerivativeEstimate",
    "TriangleReport",
    "alternating_binomial_moment",
    "closed_form_derivative",
    "convergence_sweep",
    "fd_derivative",
    "fold_perturbation",
    "geometric_steps",
    "oracle_triangle",
    "quadrature_crosscheck",
    "quadrature_derivative",
    "richardson_extrapolate",
]
