"""Finite-difference derivatives of the exact entropy with Richardson extrapolation."""
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from settings.config import Settings, get_settings
from spectral.decompose import matrix_entropy
from spectral.errors import InvalidArgument, StencilLeavesPSDCone
from spectral.matrices import DensityMatrix, PerturbationOp, require_same_dim

logger = logging.getLogger(__name__)

# centered stencils: (offsets in units of h, weights, power of h in the denominator)
STENCILS: dict[int, tuple[tuple[int, ...], tuple[float, ...], int]] = {
    1: ((1, -1), (0.5, -0.5), 1),
    2: ((1, 0, -1), (1.0, -2.0, 1.0), 2),
    3: ((2, 1, -1, -2), (0.5, -1.0, 1.0, -0.5), 3),
    4: ((2, 1, 0, -1, -2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}


@dataclass(frozen=True)
class DerivativeEstimate:
    order: int
    value: float
    error_estimate: float
    steps_used: list[float] = field(default_factory=list)


def richardson_extrapolate(base_values: Sequence[float], p: int, r: float = 2.0) -> tuple[float, float]:
    """Extrapolate a sequence computed at steps h, h/r, h/r^2, ...

    Returns the extrapolated value and the gap to the previous table level as error estimate.
    """
    n = len(base_values)
    if n < 2:
        raise InvalidArgument("richardson_extrapolate requires at least two base values")

    vals = [float(v) for v in base_values]
    for j in range(1, n):
        factor = r ** (p * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    return vals[-1], abs(vals[-1] - vals[-2])


def centered_difference(f: Callable[[float], float], order: int, h: float) -> float:
    offsets, weights, power = STENCILS[order]
    return sum(w * f(o * h) for o, w in zip(offsets, weights)) / h**power


def _stencil_is_psd(rho: NDArray[np.complex128], h: NDArray[np.complex128], reach: float, tol: float) -> bool:
    return all(float(np.linalg.eigvalsh(rho + s * reach * h)[0]) >= -tol for s in (1.0, -1.0))


def fd_derivative(
    rho0: DensityMatrix,
    H: PerturbationOp,
    order: int,
    eps0: float | None = None,
    levels: int | None = None,
    settings: Settings | None = None,
) -> DerivativeEstimate:
    """d^order/deps^order of entropy_exact(rho_0 + eps H) at eps = 0.

    Raises:
        StencilLeavesPSDCone: no step down to eps0 / 2^fd_max_shrinks keeps the stencil PSD.
    """
    settings = settings or get_settings()
    if order not in STENCILS:
        raise InvalidArgument(f"fd_derivative: order must be in 1..4, got {order}")
    require_same_dim(rho0.dim, H.dim, what="fd_derivative")
    h0 = eps0 if eps0 is not None else settings.fd_eps0
    levels = levels if levels is not None else settings.fd_levels
    if h0 <= 0 or levels < 2:
        raise InvalidArgument(f"fd_derivative: need eps0 > 0 and levels >= 2, got {h0}, {levels}")

    reach = float(max(abs(o) for o in STENCILS[order][0]))
    for _ in range(settings.fd_max_shrinks + 1):
        if _stencil_is_psd(rho0.mat, H.mat, reach * h0, settings.hermitian_tol):
            break
        h0 /= 2.0
    else:
        raise StencilLeavesPSDCone(
            f"fd_derivative: rho_0 +- {reach:g} eps H leaves the PSD cone for every eps down to {h0 * 2:.3e}"
        )

    def f(eps: float) -> float:
        return matrix_entropy(rho0.mat + eps * H.mat)

    steps = [h0 / 2**i for i in range(levels)]
    estimates = [centered_difference(f, order, h) for h in steps]
    value, error = richardson_extrapolate(estimates, p=2)
    logger.debug(f"fd_derivative: order {order}, steps {steps[0]:.3e}..{steps[-1]:.3e}, error {error:.3e}")
    return DerivativeEstimate(order=order, value=value, error_estimate=error, steps_used=steps)
