"""Eigendecomposition, degeneracy clustering and exact entropy."""
import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from settings.config import Settings, get_settings
from spectral.errors import EigensolverFailure, InvalidArgument, NullSpaceCoupling
from spectral.matrices import ComplexMatrix, DensityMatrix, PerturbationOp, require_same_dim

logger = logging.getLogger(__name__)

# 0 log 0 = 0 below this
ENTROPY_ZERO = 1e-15


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues sorted descending, eigenvectors as columns, clusters as [start, stop) ranges."""
    eigenvalues: NDArray[np.float64]
    eigenvectors: ComplexMatrix
    clusters: list[tuple[int, int]] = field(default_factory=list)
    cluster_tol: float | None = None
    cluster_rtol: float = 1e-8

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def cluster_sizes(self) -> list[int]:
        return [stop - start for start, stop in self.clusters]

    @property
    def cluster_eigenvalues(self) -> NDArray[np.float64]:
        return np.array([self.eigenvalues[start:stop].mean() for start, stop in self.clusters])

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def cluster_eigenvalues(
    eigenvalues: NDArray[np.float64],
    cluster_tol: float | None = None,
    cluster_rtol: float = 1e-8,
) -> list[tuple[int, int]]:
    """Gap-group a descending eigenvalue list.

    Neighbours join when their gap is at most ``cluster_tol`` (absolute, when given) or
    ``cluster_rtol * max(|a|, |b|)``.
    """
    if len(eigenvalues) == 0:
        return []
    gaps = -np.diff(eigenvalues)
    if cluster_tol is not None:
        bounds = np.full_like(gaps, cluster_tol)
    else:
        bounds = cluster_rtol * np.maximum(np.abs(eigenvalues[:-1]), np.abs(eigenvalues[1:]))
    splits = np.flatnonzero(gaps > bounds) + 1
    edges = [0, *splits.tolist(), len(eigenvalues)]
    return list(zip(edges[:-1], edges[1:]))


def decompose(
    rho0: DensityMatrix,
    cluster_tol: float | None = None,
    settings: Settings | None = None,
) -> SpectralData:
    """Eigendecompose ``rho0`` with eigenvalues sorted descending and clustered."""
    settings = settings or get_settings()
    if cluster_tol is not None and cluster_tol <= 0:
        raise InvalidArgument(f"decompose: cluster_tol must be > 0, got {cluster_tol}")

    try:
        values, vectors = np.linalg.eigh(rho0.mat)
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(f"decompose: {e}") from e

    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    clusters = cluster_eigenvalues(values, cluster_tol, settings.cluster_rtol)
    logger.debug(f"decompose: dim={len(values)}, clusters={len(clusters)}, largest={max(e - s for s, e in clusters)}")
    return SpectralData(
        eigenvalues=values,
        eigenvectors=vectors,
        clusters=clusters,
        cluster_tol=cluster_tol,
        cluster_rtol=settings.cluster_rtol,
    )


def spectrum_entropy(eigenvalues: NDArray[np.float64]) -> float:
    """-sum p log p over the eigenvalues above the 0 log 0 cut."""
    p = np.asarray(eigenvalues, dtype=float)
    p = p[p > ENTROPY_ZERO]
    return float(-np.sum(p * np.log(p)))


def matrix_entropy(mat: ComplexMatrix) -> float:
    """Entropy of an unvalidated Hermitian matrix."""
    try:
        values = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as e:
        raise EigensolverFailure(f"entropy_exact: {e}") from e
    return spectrum_entropy(values)


def entropy_exact(rho: DensityMatrix) -> float:
    """Von Neumann entropy in nats by exact diagonalization."""
    return matrix_entropy(rho.mat)


def to_eigenbasis(H: PerturbationOp | ComplexMatrix, spec: SpectralData) -> ComplexMatrix:
    """Return V^dagger H V."""
    mat = H.mat if isinstance(H, PerturbationOp) else np.asarray(H, dtype=np.complex128)
    require_same_dim(mat.shape[0], spec.dim, what="to_eigenbasis")
    v = spec.eigenvectors
    return v.conj().T @ mat @ v


@dataclass(frozen=True)
class Support:
    """Indices of ``spec`` kept by the perturbation formulas and the restricted data."""
    indices: NDArray[np.intp]
    eigenvalues: NDArray[np.float64]
    hb: ComplexMatrix


def restrict_to_support(
    spec: SpectralData,
    Hb: ComplexMatrix,
    settings: Settings | None = None,
    operation: str = "perturbation",
) -> Support:
    """Drop null-space indices after checking that H does not couple into them.

    Raises:
        NullSpaceCoupling: an entry touching a null index exceeds ``null_coupling_tol``.
    """
    settings = settings or get_settings()
    require_same_dim(Hb.shape[0], spec.dim, what=operation)
    null = spec.eigenvalues < settings.eigenvalue_floor
    if np.any(null):
        coupling = np.abs(Hb[null, :])
        worst = float(coupling.max()) if coupling.size else 0.0
        if worst > settings.null_coupling_tol:
            raise NullSpaceCoupling(
                f"{operation}: |H_nm| = {worst:.3e} touches an eigenvalue below "
                f"{settings.eigenvalue_floor:.1e} (bound {settings.null_coupling_tol:.1e})"
            )
        logger.debug(f"{operation}: dropped {int(null.sum())} null-space indices")
    keep = np.flatnonzero(~null)
    return Support(
        indices=keep,
        eigenvalues=spec.eigenvalues[keep],
        hb=Hb[np.ix_(keep, keep)],
    )


def support_clusters(spec: SpectralData, support: Support) -> list[tuple[int, int]]:
    """Clusters of ``spec`` re-indexed onto the support (null clusters dropped)."""
    kept = set(support.indices.tolist())
    position = {old: new for new, old in enumerate(support.indices.tolist())}
    out = []
    for start, stop in spec.clusters:
        members = [i for i in range(start, stop) if i in kept]
        if members:
            out.append((position[members[0]], position[members[-1]] + 1))
    return out
