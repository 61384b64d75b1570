"""Cross-checks between closed forms, quadrature, finite differences and exact entropy."""
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from oracle.finite_difference import fd_derivative
from series.base import EntropySeries
from series.multi import PerturbationSeries
from series.nondegenerate import derivative1, derivative2, derivative_n_quadrature, q3, q4_terms
from settings.config import Settings, get_settings
from spectral.decompose import decompose, matrix_entropy, to_eigenbasis
from spectral.errors import InvalidArgument
from spectral.matrices import DensityMatrix, PerturbationOp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CrosscheckRow:
    order: int
    closed_form: float
    quadrature: float

    @property
    def difference(self) -> float:
        return abs(self.closed_form - self.quadrature)


@dataclass(frozen=True)
class TriangleReport:
    order: int
    closed_form: float
    quadrature: float
    finite_difference: float
    fd_error: float

    @property
    def max_disagreement(self) -> float:
        values = (self.closed_form, self.quadrature, self.finite_difference)
        return max(abs(a - b) for a in values for b in values)


@dataclass(frozen=True)
class ConvergenceRow:
    eps: float
    exact: float
    series: float

    @property
    def residual(self) -> float:
        return abs(self.exact - self.series)


def closed_form_derivative(rho0: DensityMatrix, H: PerturbationOp, order: int, settings: Settings | None = None) -> float:
    """d^order S / deps^order from the non-degenerate closed forms (orders 3-4 need H_nn = 0)."""
    settings = settings or get_settings()
    spec = decompose(rho0, settings=settings)
    Hb = to_eigenbasis(H, spec)
    match order:
        case 1:
            return derivative1(spec, Hb, settings)
        case 2:
            return derivative2(spec, Hb, settings)
        case 3:
            return 6.0 * q3(spec, Hb, settings)
        case 4:
            return -24.0 * sum(q4_terms(spec, Hb, settings))
    raise InvalidArgument(f"closed forms exist for orders 1..4, got {order}")


def quadrature_derivative(
    rho0: DensityMatrix,
    H: PerturbationOp,
    order: int,
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> float:
    settings = settings or get_settings()
    spec = decompose(rho0, settings=settings)
    return derivative_n_quadrature(spec, to_eigenbasis(H, spec), order, rel_tol, settings)


def quadrature_crosscheck(
    rho0: DensityMatrix,
    H: PerturbationOp,
    orders: Iterable[int] = (2, 3, 4),
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> list[CrosscheckRow]:
    """Closed form against quadrature for each requested order >= 2."""
    settings = settings or get_settings()
    rows = []
    for order in sorted(set(orders)):
        row = CrosscheckRow(
            order=order,
            closed_form=closed_form_derivative(rho0, H, order, settings),
            quadrature=quadrature_derivative(rho0, H, order, rel_tol, settings),
        )
        logger.info(f"crosscheck order {order}: difference {row.difference:.3e}")
        rows.append(row)
    return rows


def oracle_triangle(
    rho0: DensityMatrix,
    H: PerturbationOp,
    order: int = 2,
    eps0: float | None = None,
    settings: Settings | None = None,
) -> TriangleReport:
    """Closed form, quadrature and finite difference for one derivative order in 2..4."""
    settings = settings or get_settings()
    estimate = fd_derivative(rho0, H, order, eps0=eps0, settings=settings)
    return TriangleReport(
        order=order,
        closed_form=closed_form_derivative(rho0, H, order, settings),
        quadrature=quadrature_derivative(rho0, H, order, settings=settings),
        finite_difference=estimate.value,
        fd_error=estimate.error_estimate,
    )


def fold_perturbation(rho0: DensityMatrix, ps: PerturbationSeries, eps: float) -> np.ndarray:
    """rho_0 + sum_n eps^n H^(n) as a plain matrix."""
    out = np.array(rho0.mat, dtype=np.complex128)
    for n, term in enumerate(ps.terms, start=1):
        out = out + eps**n * term.mat
    return out


def convergence_sweep(
    rho0: DensityMatrix,
    ps: PerturbationSeries,
    series: EntropySeries,
    eps_values: Iterable[float],
) -> list[ConvergenceRow]:
    """Exact entropy against the truncated series along a sweep of eps."""
    rows = [
        ConvergenceRow(eps=float(eps), exact=matrix_entropy(fold_perturbation(rho0, ps, eps)), series=series.evaluate(eps))
        for eps in eps_values
    ]
    for previous, current in zip(rows, rows[1:]):
        if previous.residual > 0 and current.residual > 0:
            slope = math.log(previous.residual / current.residual) / math.log(previous.eps / current.eps)
            logger.debug(f"convergence: eps {current.eps:.3e}, observed order {slope:.2f}")
    return rows


def geometric_steps(start: float = 1e-1, stop: float = 1e-3, count: int = 8) -> list[float]:
    if start <= 0 or stop <= 0 or count < 2:
        raise InvalidArgument(f"geometric_steps: need positive bounds and count >= 2, got {start}, {stop}, {count}")
    return np.geomspace(start, stop, count).tolist()
