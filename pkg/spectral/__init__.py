"""Spectral core: validated matrices, eigendecomposition and exact entropy."""
from spectral.decompose import (
    SpectralData,
    Support,
    cluster_eigenvalues,
    decompose,
    entropy_exact,
    matrix_entropy,
    restrict_to_support,
    spectrum_entropy,
    support_clusters,
    to_eigenbasis,
)
from spectral.matrices import (
    ComplexMatrix,
    DensityMatrix,
    PerturbationOp,
    as_complex_matrix,
    validate_density,
    validate_perturbation,
)

__all__ = [
    "ComplexMatrix",
    "DensityMatrix",
    "PerturbationOp",
    "SpectralData",
    "Support",
    "as_complex_matrix",
    "cluster_eigenvalues",
    "decompose",
    "entropy_exact",
    "matrix_entropy",
    "restrict_to_support",
    "spectrum_entropy",
    "support_clusters",
    "to_eigenbasis",
    "validate_density",
    "validate_perturbation",
]
