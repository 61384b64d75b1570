"""Validated matrix carriers: density matrices and perturbation operators."""
import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from settings.config import Settings, get_settings
from spectral.errors import (
    DimensionMismatch,
    EigensolverFailure,
    NegativeEigenvalue,
    NotHermitian,
    NotTraceless,
    TraceOutOfRange,
)

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]


def as_complex_matrix(entries: ArrayLike) -> ComplexMatrix:
    """Copy ``entries`` into a square complex128 array."""
    mat = np.array(entries, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {mat.shape}")
    return mat


def hermitian_defect(mat: ComplexMatrix) -> float:
    """Largest entry of |A - A^dagger|."""
    return float(np.max(np.abs(mat - mat.conj().T)))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD matrix with trace 1 up to ``trace_deficit``."""
    mat: ComplexMatrix
    trace_deficit: float = 0.0

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class PerturbationOp:
    """Hermitian traceless perturbation H (or one term H^(n))."""
    mat: ComplexMatrix

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def _readonly(mat: ComplexMatrix) -> ComplexMatrix:
    mat.setflags(write=False)
    return mat


def validate_density(
    mat: ArrayLike,
    trace_deficit: float = 0.0,
    settings: Settings | None = None,
) -> DensityMatrix:
    """Check Hermiticity, trace and positivity, returning a frozen copy.

    Raises:
        NotHermitian, TraceOutOfRange, NegativeEigenvalue
    """
    settings = settings or get_settings()
    tol = settings.hermitian_tol
    rho = as_complex_matrix(mat)

    defect = hermitian_defect(rho)
    if defect > tol:
        raise NotHermitian(f"density matrix: max|A - A^dagger| = {defect:.3e} exceeds {tol:.1e}")

    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > trace_deficit + tol:
        raise TraceOutOfRange(
            f"density matrix: |Tr - 1| = {abs(trace - 1.0):.3e} exceeds deficit {trace_deficit:.3e} + {tol:.1e}"
        )

    try:
        lowest = float(np.linalg.eigvalsh(rho)[0])
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(f"validate_density: {e}") from e
    if lowest < -tol:
        raise NegativeEigenvalue(f"density matrix: smallest eigenvalue {lowest:.6e} below -{tol:.1e}")

    return DensityMatrix(mat=_readonly(rho), trace_deficit=float(trace_deficit))


def validate_perturbation(mat: ArrayLike, settings: Settings | None = None) -> PerturbationOp:
    """Check that a perturbation is Hermitian and traceless."""
    settings = settings or get_settings()
    tol = settings.hermitian_tol
    h = as_complex_matrix(mat)

    defect = hermitian_defect(h)
    if defect > tol:
        raise NotHermitian(f"perturbation: max|H - H^dagger| = {defect:.3e} exceeds {tol:.1e}")

    trace = abs(complex(np.trace(h)))
    if trace > tol:
        raise NotTraceless(f"perturbation: |Tr H| = {trace:.3e} exceeds {tol:.1e}")

    return PerturbationOp(mat=_readonly(h))


def require_same_dim(*dims: int, what: str = "operands") -> None:
    if len(set(dims)) > 1:
        raise DimensionMismatch(f"{what}: dimensions {dims} differ")
