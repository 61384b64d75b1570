"""Pydantic models for every JSON payload read or written by the CLI."""
from codec.models import (
    ConvergenceRowPayload,
    CrosscheckRowPayload,
    EntropySeriesPayload,
    FockSpecPayload,
    MatrixPayload,
    PerturbationSeriesPayload,
    TriangleReportPayload,
    ValidationReportPayload,
    dump_matrix,
    load_fock_spec,
    load_matrix,
    load_perturbation_series,
)

__all__ = [
    "ConvergenceRowPayload",
    "CrosscheckRowPayload",
    "EntropySeriesPayload",
    "FockSpecPayload",
    "MatrixPayload",
    "PerturbationSeriesPayload",
    "TriangleReportPayload",
    "ValidationReportPayload",
    "dump_matrix",
    "load_fock_spec",
    "load_matrix",
    "load_perturbation_series",
]
