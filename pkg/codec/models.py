"""JSON payloads for matrices, perturbation series, Fock specs and reports."""
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field, model_validator

from oracle.crosscheck import ConvergenceRow, CrosscheckRow, TriangleReport
from series.base import EntropySeries, Method
from series.multi import PerturbationSeries
from spectral.matrices import ComplexMatrix, PerturbationOp, as_complex_matrix
from states.fock import FockStateSpec


class MatrixPayload(BaseModel):
    """Row-major complex matrix: {"dim": d, "entries": [[re, im], ...]} with d^2 pairs."""
    dim: int = Field(..., ge=1, examples=[2])
    entries: list[tuple[float, float]] = Field(..., examples=[[[0.75, 0.0], [0.0, 0.0], [0.0, 0.0], [0.25, 0.0]]])

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixPayload":
        if len(self.entries) != self.dim * self.dim:
            raise ValueError(f"expected {self.dim * self.dim} entries for dim {self.dim}, got {len(self.entries)}")
        return self

    def to_array(self) -> ComplexMatrix:
        flat = np.array([complex(re, im) for re, im in self.entries], dtype=np.complex128)
        return flat.reshape(self.dim, self.dim)

    @classmethod
    def from_array(cls, mat: ArrayLike) -> "MatrixPayload":
        arr = as_complex_matrix(mat)
        return cls(dim=arr.shape[0], entries=[(float(z.real), float(z.imag)) for z in arr.ravel()])


class PerturbationSeriesPayload(BaseModel):
    terms: list[MatrixPayload] = Field(..., min_length=1)

    def to_arrays(self) -> list[ComplexMatrix]:
        return [term.to_array() for term in self.terms]

    @classmethod
    def from_series(cls, ps: PerturbationSeries) -> "PerturbationSeriesPayload":
        return cls(terms=[MatrixPayload.from_array(term.mat) for term in ps.terms])


class FockSpecPayload(BaseModel):
    v: float = Field(..., gt=0.0, lt=1.0, examples=[0.5])
    alpha: tuple[float, float] = Field(default=(1.0, 0.0), examples=[[1.0, 0.0]])
    D: int | None = Field(default=None, ge=2, examples=[60])

    def to_spec(self) -> FockStateSpec:
        return FockStateSpec(v=self.v, alpha=complex(*self.alpha), D=self.D)


class EntropySeriesPayload(BaseModel):
    s0: float
    coeffs: list[float]
    methods: list[Method]
    notes: list[str] = Field(default_factory=list)
    base: str = "nats"
    exact: float | None = None
    residual: float | None = None

    @classmethod
    def from_series(cls, series: EntropySeries, base: str = "nats") -> "EntropySeriesPayload":
        return cls(
            s0=series.base_entropy,
            coeffs=list(series.coeffs),
            methods=list(series.methods),
            notes=list(series.notes),
            base=base,
        )


class CrosscheckRowPayload(BaseModel):
    order: int
    closed_form: float
    quadrature: float
    difference: float

    @classmethod
    def from_row(cls, row: CrosscheckRow) -> "CrosscheckRowPayload":
        return cls(order=row.order, closed_form=row.closed_form, quadrature=row.quadrature, difference=row.difference)


class TriangleReportPayload(BaseModel):
    order: int
    closed_form: float
    quadrature: float
    finite_difference: float
    fd_error: float
    max_disagreement: float

    @classmethod
    def from_report(cls, report: TriangleReport) -> "TriangleReportPayload":
        return cls(
            order=report.order,
            closed_form=report.closed_form,
            quadrature=report.quadrature,
            finite_difference=report.finite_difference,
            fd_error=report.fd_error,
            max_disagreement=report.max_disagreement,
        )


class ValidationReportPayload(BaseModel):
    crosscheck: list[CrosscheckRowPayload] = Field(default_factory=list)
    triangle: TriangleReportPayload | None = None
    passed: bool = True


class ConvergenceRowPayload(BaseModel):
    eps: float
    exact: float
    series: float
    residual: float

    @classmethod
    def from_row(cls, row: ConvergenceRow) -> "ConvergenceRowPayload":
        return cls(eps=row.eps, exact=row.exact, series=row.series, residual=row.residual)


def load_matrix(path: Path) -> ComplexMatrix:
    return MatrixPayload.model_validate_json(Path(path).read_text()).to_array()


def load_perturbation_series(path: Path) -> list[ComplexMatrix]:
    return PerturbationSeriesPayload.model_validate_json(Path(path).read_text()).to_arrays()


def load_fock_spec(path: Path) -> FockStateSpec:
    return FockSpecPayload.model_validate_json(Path(path).read_text()).to_spec()


def dump_matrix(mat: ComplexMatrix | PerturbationOp) -> str:
    arr = mat.mat if isinstance(mat, PerturbationOp) else mat
    return MatrixPayload.from_array(arr).model_dump_json(indent=2)
