"""Entropy expansion for rho = rho_0 + sum_n eps^n H^(n), and the diagonal rebase."""
import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from series.base import EntropySeries, Method
from series.quadrature import integrate_chains
from settings.config import Settings, get_settings
from spectral.decompose import SpectralData, decompose, restrict_to_support, spectrum_entropy, to_eigenbasis
from spectral.errors import InvalidArgument, RebaseNotPositive
from spectral.matrices import (
    ComplexMatrix,
    DensityMatrix,
    PerturbationOp,
    require_same_dim,
    validate_density,
    validate_perturbation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PerturbationSeries:
    """Terms H^(1) ... H^(N); orders beyond N are zero."""
    terms: list[PerturbationOp] = field(default_factory=list)

    @property
    def max_order(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> PerturbationOp | None:
        return self.terms[n - 1] if 1 <= n <= len(self.terms) else None


@dataclass(frozen=True)
class OrderContribution:
    """The two parts of s_k: the -Tr[H^(k) log rho_0] term and the resolvent integrals."""
    order: int
    log_term: float
    resolvent_term: float

    @property
    def total(self) -> float:
        return self.log_term + self.resolvent_term


def compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``k`` into ``parts`` positive integers, lexicographic."""
    if parts < 1 or k < parts:
        return
    for cuts in combinations(range(1, k), parts - 1):
        bounds = (0, *cuts, k)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def order_contributions(
    rho0: DensityMatrix,
    ps: PerturbationSeries,
    K: int,
    rel_tol: float | None = None,
    settings: Settings | None = None,
    spec: SpectralData | None = None,
) -> list[OrderContribution]:
    """Split every order k = 1..K into its log term and its resolvent-chain term."""
    settings = settings or get_settings()
    if K < 1:
        raise InvalidArgument(f"entropy_series_multi: K must be >= 1, got {K}")
    for term in ps.terms:
        require_same_dim(term.dim, rho0.dim, what="entropy_series_multi")
    spec = spec or decompose(rho0, settings=settings)

    supported: dict[int, ComplexMatrix] = {}
    energies = None
    for n in range(1, min(K, ps.max_order) + 1):
        support = restrict_to_support(spec, to_eigenbasis(ps.term(n), spec), settings, "entropy_series_multi")
        supported[n] = support.hb
        energies = support.eigenvalues
    if energies is None:
        energies = spec.eigenvalues[spec.eigenvalues >= settings.eigenvalue_floor]
    logs = np.log(energies)

    contributions = []
    for k in range(1, K + 1):
        hk = supported.get(k)
        log_term = 0.0 if hk is None else float(-np.sum(np.real(np.diagonal(hk)) * logs))

        chains, signs = [], []
        for j in range(2, k + 1):
            for parts in compositions(k, j):
                if all(i in supported for i in parts):
                    chains.append([supported[i] for i in parts])
                    signs.append(-((-1) ** j))
        resolvent_term = 0.0
        if chains:
            values = integrate_chains(energies, chains, rel_tol=rel_tol, settings=settings)
            resolvent_term = float(np.dot(signs, values.real))
        logger.debug(f"order {k}: log term {log_term:.10e}, {len(chains)} chains -> {resolvent_term:.10e}")
        contributions.append(OrderContribution(order=k, log_term=log_term, resolvent_term=resolvent_term))
    return contributions


def entropy_series_multi(
    rho0: DensityMatrix,
    ps: PerturbationSeries,
    K: int,
    rel_tol: float | None = None,
    settings: Settings | None = None,
) -> EntropySeries:
    """Coefficients s_0..s_K of S(rho_0 + sum_n eps^n H^(n))."""
    settings = settings or get_settings()
    spec = decompose(rho0, settings=settings)
    contributions = order_contributions(rho0, ps, K, rel_tol=rel_tol, settings=settings, spec=spec)
    methods = [Method.CLOSED_FORM] + [Method.QUADRATURE] * (K - 1)
    logger.info(f"entropy_series_multi: {ps.max_order} term(s), K={K}")
    return EntropySeries(
        base_entropy=spectrum_entropy(spec.eigenvalues),
        coeffs=[c.total for c in contributions],
        methods=methods,
    )


def rebase_diagonal(
    rho0: DensityMatrix,
    H: PerturbationOp,
    eps: float,
    settings: Settings | None = None,
) -> tuple[DensityMatrix, PerturbationOp]:
    """Absorb the eigenbasis-diagonal part of H into the base state.

    Returns (rho_0 + eps H_0, H - H_0) with H_0 diagonal in the eigenbasis of rho_0.

    Raises:
        RebaseNotPositive: rho_0 + eps H_0 has an eigenvalue below -hermitian_tol.
    """
    settings = settings or get_settings()
    require_same_dim(rho0.dim, H.dim, what="rebase_diagonal")
    spec = decompose(rho0, settings=settings)
    v = spec.eigenvectors
    diagonal = np.real(np.diagonal(to_eigenbasis(H, spec)))
    h0 = (v * diagonal) @ v.conj().T
    h0 = 0.5 * (h0 + h0.conj().T)

    shifted = rho0.mat + eps * h0
    lowest = float(np.linalg.eigvalsh(shifted)[0])
    if lowest < -settings.hermitian_tol:
        raise RebaseNotPositive(
            f"rebase_diagonal: rho_0 + eps H_0 has eigenvalue {lowest:.6e} below -{settings.hermitian_tol:.1e}"
        )
    rho0p = validate_density(shifted, rho0.trace_deficit, settings)
    hp = validate_perturbation(H.mat - h0, settings)
    logger.debug(f"rebase_diagonal: absorbed diagonal with max|H_nn| = {np.max(np.abs(diagonal)):.3e}")
    return rho0p, hp
