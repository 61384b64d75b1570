"""Thermal states and their perturbations in a truncated Fock basis.

Truncated states are not renormalized; the geometric tail v^D is carried as the trace
deficit of the returned ``DensityMatrix``.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from series.multi import PerturbationSeries
from settings.config import Settings, get_settings
from spectral.errors import InvalidArgument, TruncationTooCoarse
from spectral.matrices import ComplexMatrix, DensityMatrix, PerturbationOp, validate_density

logger = logging.getLogger(__name__)

# extra levels used when building a displaced state before cutting back to D
DISPLACEMENT_PADDING = 40


@dataclass(frozen=True)
class FockStateSpec:
    """Thermal ratio v = N/(N+1), perturbation amplitude alpha and Fock cutoff D per mode."""
    v: float
    alpha: complex = 1.0 + 0.0j
    D: int | None = None

    @property
    def tail_mass(self) -> float:
        if self.D is None:
            raise InvalidArgument("FockStateSpec: D is not resolved; call resolve() first")
        return self.v**self.D

    def resolve(self, settings: Settings | None = None) -> "FockStateSpec":
        """Fill in the default cutoff and check the truncation tail."""
        settings = settings or get_settings()
        if not 0.0 < self.v < 1.0:
            raise InvalidArgument(f"FockStateSpec: v must lie in (0, 1), got {self.v}")
        D = self.D if self.D is not None else default_dimension(self.v, settings)
        if D < 2:
            raise InvalidArgument(f"FockStateSpec: D must be >= 2, got {D}")
        resolved = FockStateSpec(v=float(self.v), alpha=complex(self.alpha), D=int(D))
        if resolved.tail_mass > settings.truncation_tol:
            raise TruncationTooCoarse(
                f"Fock truncation: tail v^D = {resolved.tail_mass:.3e} exceeds {settings.truncation_tol:.1e} "
                f"(v={self.v}, D={D})"
            )
        return resolved


def default_dimension(v: float, settings: Settings | None = None) -> int:
    """Smallest D with v^D below ``default_tail``, capped at ``max_fock_dim``."""
    settings = settings or get_settings()
    if not 0.0 < v < 1.0:
        raise InvalidArgument(f"default_dimension: v must lie in (0, 1), got {v}")
    D = math.ceil(math.log(settings.default_tail) / math.log(v))
    return max(2, min(D, settings.max_fock_dim))


def ladder_operators(D: int) -> tuple[ComplexMatrix, ComplexMatrix]:
    """Truncated annihilation a|n> = sqrt(n)|n-1> and its adjoint."""
    a = np.diag(np.sqrt(np.arange(1, D)), k=1).astype(np.complex128)
    return a, a.conj().T


def _thermal_diagonal(v: float, D: int) -> np.ndarray:
    return (1.0 - v) * v ** np.arange(D)


def thermal_state(v: float, D: int | None = None, settings: Settings | None = None) -> DensityMatrix:
    """diag((1-v) v^n), n < D, with trace deficit v^D."""
    fs = FockStateSpec(v=v, D=D).resolve(settings)
    rho = np.diag(_thermal_diagonal(fs.v, fs.D)).astype(np.complex128)
    return validate_density(rho, fs.tail_mass, settings)


def _perturbation(mat: ComplexMatrix) -> PerturbationOp:
    # truncated operators are traceless only up to the tail, so they skip validate_perturbation
    h = 0.5 * (mat + mat.conj().T)
    h.setflags(write=False)
    return PerturbationOp(mat=h)


def onemode_perturbation(fs: FockStateSpec, settings: Settings | None = None) -> PerturbationOp:
    """H = (1-v)(alpha a^dagger rho_T + alpha* rho_T a); the diagonal vanishes identically."""
    fs = fs.resolve(settings)
    a, adag = ladder_operators(fs.D)
    rho = np.diag(_thermal_diagonal(fs.v, fs.D))
    h = (1.0 - fs.v) * (fs.alpha * adag @ rho + np.conj(fs.alpha) * rho @ a)
    return _perturbation(h)


def twomode_state_and_perturbation(
    fs: FockStateSpec,
    settings: Settings | None = None,
) -> tuple[DensityMatrix, PerturbationOp]:
    """rho_T (x) rho_T and H = (1-v)^2 (alpha* a1^dagger a2^dagger rho + alpha rho a1 a2).

    Basis |j> (x) |k> sits at flat index j * D + k.
    """
    fs = fs.resolve(settings)
    a, adag = ladder_operators(fs.D)
    eye = np.eye(fs.D)
    diag = _thermal_diagonal(fs.v, fs.D)
    rho2 = np.diag(np.kron(diag, diag)).astype(np.complex128)
    a1, a2 = np.kron(a, eye), np.kron(eye, a)
    a1dag, a2dag = np.kron(adag, eye), np.kron(eye, adag)

    h = (1.0 - fs.v) ** 2 * (np.conj(fs.alpha) * a1dag @ a2dag @ rho2 + fs.alpha * rho2 @ a1 @ a2)
    deficit = 1.0 - (1.0 - fs.tail_mass) ** 2
    logger.debug(f"twomode: dim {fs.D**2}, trace deficit {deficit:.3e}")
    return validate_density(rho2, deficit, settings), _perturbation(h)


def displaced_thermal_terms(fs: FockStateSpec, settings: Settings | None = None) -> PerturbationSeries:
    """First and second order terms of D(eps alpha) rho_T D(eps alpha)^dagger.

    H2 = (1/2)(1-v)^2 [alpha^2 a^dagger^2 rho + alpha*^2 rho a^2 + 2|alpha|^2 a^dagger rho a]
         - (1-v)|alpha|^2 rho
    """
    fs = fs.resolve(settings)
    a, adag = ladder_operators(fs.D)
    rho = np.diag(_thermal_diagonal(fs.v, fs.D)).astype(np.complex128)
    alpha = fs.alpha
    weight = abs(alpha) ** 2

    h1 = onemode_perturbation(fs, settings)
    h2 = 0.5 * (1.0 - fs.v) ** 2 * (
        alpha**2 * adag @ adag @ rho + np.conj(alpha) ** 2 * rho @ a @ a + 2.0 * weight * adag @ rho @ a
    ) - (1.0 - fs.v) * weight * rho
    return PerturbationSeries(terms=[h1, _perturbation(h2)])


def displacement_operator(alpha: complex, D: int, padding: int = DISPLACEMENT_PADDING) -> ComplexMatrix:
    """exp(alpha a^dagger - alpha* a) built in D + padding levels and cut to D x D."""
    a, adag = ladder_operators(D + padding)
    full = expm(alpha * adag - np.conj(alpha) * a)
    return full[:D, :D]


def displaced_thermal_state(fs: FockStateSpec, eps: float, settings: Settings | None = None) -> DensityMatrix:
    """D(eps alpha) rho_T D(eps alpha)^dagger, conjugated in a padded space and truncated to D."""
    fs = fs.resolve(settings)
    big = fs.D + DISPLACEMENT_PADDING
    a, adag = ladder_operators(big)
    shift = expm(eps * fs.alpha * adag - eps * np.conj(fs.alpha) * a)
    rho = np.diag(_thermal_diagonal(fs.v, big)).astype(np.complex128)
    displaced = (shift @ rho @ shift.conj().T)[: fs.D, : fs.D]
    displaced = 0.5 * (displaced + displaced.conj().T)
    deficit = abs(1.0 - float(np.trace(displaced).real))
    return validate_density(displaced, deficit, settings)
