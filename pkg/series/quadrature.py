"""Adaptive quadrature of resolvent chains in the eigenbasis.

Evaluates integral_0^inf Tr{t R H_1 R H_2 R ... H_j R} dt with R = (rho_0 + t)^-1 diagonal,
after mapping t = u / (1 - u) onto u in [0, 1).
"""
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import quad_vec

from settings.config import Settings, get_settings
from spectral.errors import InvalidArgument, QuadratureNoConvergence
from spectral.matrices import ComplexMatrix

logger = logging.getLogger(__name__)


def _chain_trace(r: NDArray[np.float64], chain: Sequence[ComplexMatrix], scaled: dict[int, ComplexMatrix]) -> complex:
    # Tr{R H_1 R ... H_j R} = sum_n r_n (H_1 R ... H_j R)_nn
    product = None
    for h in chain:
        b = scaled.get(id(h))
        if b is None:
            b = h * r[None, :]
            scaled[id(h)] = b
        product = b if product is None else product @ b
    return complex(np.dot(r, np.diagonal(product)))


def _limit_at_infinity(chain: Sequence[ComplexMatrix]) -> complex:
    # t^(2 - j) Tr(H_1 ... H_j) as t -> inf
    if len(chain) != 2:
        return 0j
    return complex(np.trace(chain[0] @ chain[1]))


def integrate_chains(
    eigenvalues: NDArray[np.float64],
    chains: Sequence[Sequence[ComplexMatrix]],
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> NDArray[np.complex128]:
    """Integrate every chain at once; each chain needs at least two operators.

    Raises:
        QuadratureNoConvergence: subdivision budget exhausted before ``rel_tol``.
    """
    settings = settings or get_settings()
    rel_tol = rel_tol if rel_tol is not None else settings.quad_rtol
    if rel_tol <= 0:
        raise InvalidArgument(f"quadrature: rel_tol must be > 0, got {rel_tol}")
    if not chains:
        return np.zeros(0, dtype=np.complex128)
    if any(len(chain) < 2 for chain in chains):
        raise InvalidArgument("quadrature: every resolvent chain needs at least two operators")
    energies = np.asarray(eigenvalues, dtype=float)
    n_chains = len(chains)

    def integrand(u: float) -> NDArray[np.float64]:
        out = np.empty(2 * n_chains)
        if u >= 1.0:
            values = [_limit_at_infinity(chain) for chain in chains]
        else:
            t = u / (1.0 - u)
            r = 1.0 / (energies + t)
            jacobian = t / (1.0 - u) ** 2
            scaled: dict[int, ComplexMatrix] = {}
            values = [jacobian * _chain_trace(r, chain, scaled) for chain in chains]
        out[:n_chains] = [v.real for v in values]
        out[n_chains:] = [v.imag for v in values]
        return out

    kwargs = dict(epsabs=settings.quad_atol, epsrel=rel_tol, limit=settings.quad_limit, full_output=True)
    if settings.threads > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            result, error, info = quad_vec(integrand, 0.0, 1.0, workers=pool.map, **kwargs)
    else:
        result, error, info = quad_vec(integrand, 0.0, 1.0, **kwargs)

    if info.status == 1:
        raise QuadratureNoConvergence(
            f"quadrature: error estimate {error:.3e} above rel_tol {rel_tol:.1e} "
            f"after {settings.quad_limit} subdivisions"
        )
    if info.status == 2:
        logger.warning(f"quadrature: roundoff limited accuracy, error estimate {error:.3e}")
    logger.debug(f"quadrature: {n_chains} chain(s), {info.intervals.shape[0]} intervals, error {error:.3e}")
    return result[:n_chains] + 1j * result[n_chains:]


def resolvent_power_integral(
    eigenvalues: NDArray[np.float64],
    hb: ComplexMatrix,
    order: int,
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> float:
    """integral_0^inf Tr{t R [H R]^order} dt."""
    if order < 2:
        raise InvalidArgument(f"quadrature: order must be >= 2, got {order}")
    value = integrate_chains(eigenvalues, [[hb] * order], rel_tol=rel_tol, settings=settings)[0]
    return float(value.real)
