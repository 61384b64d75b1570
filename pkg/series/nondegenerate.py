"""Entropy derivatives for rho = rho_0 + eps H over a non-degenerate spectrum.

All functions take the perturbation already rotated into the eigenbasis of rho_0
(``spectral.to_eigenbasis``) and work on the support of rho_0.
"""
import logging
import math

import numpy as np

from series.base import EigenvaluePerturbation
from series.divided import SERIES_SPREAD, log_ratio, resolvent_moment
from series.quadrature import resolvent_power_integral
from settings.config import Settings, get_settings
from spectral.decompose import SpectralData, Support, restrict_to_support, support_clusters
from spectral.errors import ConsistencyCheckFailed, DegenerateSpectrum, DiagonalNotZero, InvalidArgument
from spectral.matrices import ComplexMatrix

logger = logging.getLogger(__name__)


def prepare_support(
    spec: SpectralData,
    Hb: ComplexMatrix,
    settings: Settings,
    operation: str,
    singletons: bool = True,
    zero_diagonal: bool = False,
) -> Support:
    """Restrict to the support and check the preconditions of a closed form."""
    support = restrict_to_support(spec, Hb, settings, operation)
    if singletons:
        sizes = [stop - start for start, stop in support_clusters(spec, support)]
        if any(size > 1 for size in sizes):
            raise DegenerateSpectrum(f"{operation}: cluster of size {max(sizes)} present; needs all singletons")
    if zero_diagonal:
        diagonal = float(np.max(np.abs(np.diagonal(support.hb)), initial=0.0))
        if diagonal > settings.hermitian_tol:
            raise DiagonalNotZero(f"{operation}: max|H_nn| = {diagonal:.3e} exceeds {settings.hermitian_tol:.1e}")
    return support


def _pair_log_ratios(energies: np.ndarray) -> np.ndarray:
    a = energies[:, None]
    b = energies[None, :]
    return log_ratio(a, b)


def eigenvalue_perturbation(
    spec: SpectralData,
    Hb: ComplexMatrix,
    settings: Settings | None = None,
) -> EigenvaluePerturbation:
    """First and second order eigenvalue corrections; null-space entries stay 0."""
    settings = settings or get_settings()
    support = prepare_support(spec, Hb, settings, "eigenvalue_perturbation")
    e = support.eigenvalues
    weights = np.abs(support.hb) ** 2
    np.fill_diagonal(weights, 0.0)
    gaps = e[:, None] - e[None, :]
    np.fill_diagonal(gaps, 1.0)

    first = np.zeros(spec.dim)
    second = np.zeros(spec.dim)
    first[support.indices] = np.real(np.diagonal(support.hb))
    second[support.indices] = np.sum(weights / gaps, axis=1)
    return EigenvaluePerturbation(first=first, second=second)


def derivative1(spec: SpectralData, Hb: ComplexMatrix, settings: Settings | None = None) -> float:
    """dS/deps = -sum_n H_nn log E_n. Valid for degenerate spectra as well."""
    settings = settings or get_settings()
    support = restrict_to_support(spec, Hb, settings, "derivative1")
    diagonal = np.real(np.diagonal(support.hb))
    return float(-np.sum(diagonal * np.log(support.eigenvalues)))


def _second_derivative(e: np.ndarray, hb: ComplexMatrix) -> float:
    diagonal = np.abs(np.diagonal(hb)) ** 2
    weights = np.abs(np.triu(hb, k=1)) ** 2
    ratios = _pair_log_ratios(e)
    return float(-np.sum(diagonal / e) - 2.0 * np.sum(np.triu(weights * ratios, k=1)))


def derivative2_eigen_form(spec: SpectralData, Hb: ComplexMatrix, settings: Settings | None = None) -> float:
    """Second derivative written with E_m-weighted log ratios over ordered pairs."""
    settings = settings or get_settings()
    support = prepare_support(spec, Hb, settings, "derivative2_eigen_form")
    e = support.eigenvalues
    weights = np.abs(support.hb) ** 2
    np.fill_diagonal(weights, 0.0)
    diff = e[:, None] - e[None, :]
    np.fill_diagonal(diff, 1.0)
    logs = np.log(e[None, :] / e[:, None])
    off = weights * e[None, :] * logs / diff**2
    return float(-np.sum(np.diagonal(np.abs(support.hb) ** 2) / e) - 2.0 * np.sum(off))


def derivative2(spec: SpectralData, Hb: ComplexMatrix, settings: Settings | None = None) -> float:
    """d2S/deps2 = -sum |H_nn|^2/E_n - 2 sum_{n != m} |H_nm|^2 log E_n / (E_n - E_m).

    When ``consistency_checks`` is on, the eigenvalue-correction form
    -sum H_nn^2/E_n - 2 sum E_n^(2) log E_n is evaluated too and must agree.
    """
    settings = settings or get_settings()
    support = prepare_support(spec, Hb, settings, "derivative2")
    value = _second_derivative(support.eigenvalues, support.hb)

    if settings.consistency_checks:
        e = support.eigenvalues
        corrections = eigenvalue_perturbation(spec, Hb, settings)
        second = corrections.second[support.indices]
        first = corrections.first[support.indices]
        diagonal_terms = first**2 / e
        correction_terms = 2.0 * second * np.log(e)
        alternative = float(-np.sum(diagonal_terms) - np.sum(correction_terms))
        # E_n^(2) grows like |H|^2 / gap, so the correction form cancels near small gaps
        conditioning = float(np.sum(np.abs(correction_terms)) + np.sum(diagonal_terms))
        scale = max(1.0, abs(value), conditioning)
        if abs(alternative - value) > settings.consistency_tol * scale:
            raise ConsistencyCheckFailed(
                f"derivative2: eigenvalue-correction form {alternative:.12e} differs from "
                f"resolvent form {value:.12e} by {abs(alternative - value):.3e}"
            )
    return value


def _coupling_mask(hb: ComplexMatrix, settings: Settings) -> np.ndarray:
    magnitude = np.abs(hb)
    mask = magnitude > settings.hermitian_tol * max(1.0, float(np.max(magnitude, initial=0.0)))
    np.fill_diagonal(mask, False)
    return mask


def _neighbours(coupled: np.ndarray) -> list[list[int]]:
    return [np.flatnonzero(row).tolist() for row in coupled]


def closed_walk_count(hb: ComplexMatrix, settings: Settings | None = None) -> int:
    """Closed four-walks over the off-diagonal couplings of ``hb``; the cost of ``q4_terms``."""
    settings = settings or get_settings()
    adjacency = _coupling_mask(hb, settings).astype(np.int64)
    return int(np.sum((adjacency @ adjacency) ** 2))


def q3(spec: SpectralData, Hb: ComplexMatrix, settings: Settings | None = None) -> float:
    """Third-order contribution for off-diagonal H; s_3 = q3."""
    settings = settings or get_settings()
    support = prepare_support(spec, Hb, settings, "q3", zero_diagonal=True)
    e = support.eigenvalues
    hb = support.hb
    coupled = _coupling_mask(hb, settings)
    neighbours = _neighbours(coupled)

    total = 0.0
    for n, row in enumerate(neighbours):
        for m in row:
            if m <= n:
                continue
            for k in neighbours[m]:
                if k <= m or not coupled[k, n]:
                    continue
                product = hb[n, m] * hb[m, k] * hb[k, n]
                bracket = (log_ratio(e[n], e[k]) - log_ratio(e[n], e[m])) / (e[m] - e[k])
                total += 2.0 * product.real * float(bracket)
    return total


def _pair_quartic_bracket(a: float, b: float) -> float:
    # integral_0^inf t [(a+t)^-3 (b+t)^-2 + (b+t)^-3 (a+t)^-2] dt
    delta = a - b
    if abs(delta) <= SERIES_SPREAD * max(a, b):
        return resolvent_moment([a, a, a, b, b]) + resolvent_moment([b, b, b, a, a])
    return (1.0 / a + 1.0 / b) / (2.0 * delta**2) - float(np.log(a / b)) / delta**3


def q4_terms(
    spec: SpectralData,
    Hb: ComplexMatrix,
    settings: Settings | None = None,
) -> tuple[float, float, float]:
    """(q41, q42, q43): fourth-order closed walks split by index coincidences.

    q41 sums walks n -> m -> l -> k -> n with four distinct indices, q42 walks with exactly
    one coincidence (n = l or m = k), q43 walks with n = l and m = k. s_4 = -(q41 + q42 + q43).
    """
    settings = settings or get_settings()
    support = prepare_support(spec, Hb, settings, "q4_terms", zero_diagonal=True)
    e = support.eigenvalues
    hb = support.hb
    coupled = _coupling_mask(hb, settings)
    neighbours = _neighbours(coupled)
    weights = np.abs(hb) ** 2

    q43 = 0.0
    for n, row in enumerate(neighbours):
        for m in row:
            if m > n:
                q43 += weights[n, m] ** 2 * _pair_quartic_bracket(float(e[n]), float(e[m]))

    q42 = 0.0
    for c, row in enumerate(neighbours):
        for i, a in enumerate(row):
            for b in row[i + 1:]:
                ec, ea, eb = float(e[c]), float(e[a]), float(e[b])
                bracket = (
                    2.0 * resolvent_moment([ec, ec, ec, ea, eb])
                    + resolvent_moment([ea, ea, ec, ec, eb])
                    + resolvent_moment([eb, eb, ec, ec, ea])
                )
                q42 += weights[c, a] * weights[c, b] * bracket

    q41 = 0.0
    for n, row in enumerate(neighbours):
        for m in row:
            for l in neighbours[m]:
                if l == n:
                    continue
                for k in neighbours[l]:
                    if k in (n, m) or not coupled[k, n]:
                        continue
                    product = hb[n, m] * hb[m, l] * hb[l, k] * hb[k, n]
                    nodes = [float(e[n]), float(e[n]), float(e[m]), float(e[l]), float(e[k])]
                    q41 += product.real * resolvent_moment(nodes)

    logger.debug(f"q4_terms: q41={q41:.6e}, q42={q42:.6e}, q43={q43:.6e}")
    return q41, q42, q43


def derivative_n_quadrature(
    spec: SpectralData,
    Hb: ComplexMatrix,
    n: int,
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> float:
    """d^nS/deps^n = -(-1)^n n! integral_0^inf Tr{t R [H R]^n} dt, any spectrum."""
    settings = settings or get_settings()
    if n < 2:
        raise InvalidArgument(f"derivative_n_quadrature: n must be >= 2, got {n}")
    support = restrict_to_support(spec, Hb, settings, "derivative_n_quadrature")
    integral = resolvent_power_integral(support.eigenvalues, support.hb, n, rel_tol=rel_tol, settings=settings)
    return -((-1) ** n) * math.factorial(n) * integral
