"""Perturbative entropy series: closed forms, block forms, quadrature and routing."""
from series.base import EigenvaluePerturbation, EntropySeries, Method
from series.degenerate import BlockDecomposition, block_decompose, derivative1_degenerate, derivative2_degenerate
from series.divided import log_ratio, resolvent_moment, xlogx_divided_difference
from series.expansion import entropy_series
from series.multi import (
    OrderContribution,
    PerturbationSeries,
    compositions,
    entropy_series_multi,
    order_contributions,
    rebase_diagonal,
)
from series.nondegenerate import (
    closed_walk_count,
    derivative1,
    derivative2,
    derivative2_eigen_form,
    derivative_n_quadrature,
    eigenvalue_perturbation,
    q3,
    q4_terms,
)
from series.quadrature import integrate_chains, resolvent_power_integral

__all__ = [
    "BlockDecomposition",
    "EigenvaluePerturbation",
    "EntropySeries",
    "Method",
    "OrderContribution",
    "PerturbationSeries",
    "block_decompose",
    "closed_walk_count",
    "compositions",
    "derivative1",
    "derivative1_degenerate",
    "derivative2",
    "derivative2_degenerate",
    "derivative2_eigen_form",
    "derivative_n_quadrature",
    "eigenvalue_perturbation",
    "entropy_series",
    "entropy_series_multi",
    "integrate_chains",
    "log_ratio",
    "order_contributions",
    "q3",
    "q4_terms",
    "rebase_diagonal",
    "resolvent_moment",
    "resolvent_power_integral",
    "xlogx_divided_difference",
]
