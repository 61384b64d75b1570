"""Routing of entropy Taylor coefficients to closed forms, block forms or quadrature."""
import logging
import math

import numpy as np

from series.base import EntropySeries, Method
from series.degenerate import block_decompose, derivative2_degenerate
from series.nondegenerate import closed_walk_count, derivative1, derivative2, derivative_n_quadrature, q3, q4_terms
from settings.config import Settings, get_settings
from spectral.decompose import decompose, restrict_to_support, spectrum_entropy, support_clusters, to_eigenbasis
from spectral.errors import InvalidArgument
from spectral.matrices import DensityMatrix, PerturbationOp, require_same_dim

logger = logging.getLogger(__name__)


def entropy_series(
    rho0: DensityMatrix,
    H: PerturbationOp,
    K: int,
    rel_tol: float | None = None,
    cluster_tol: float | None = None,
    settings: Settings | None = None,
) -> EntropySeries:
    """Taylor coefficients s_0..s_K of S(rho_0 + eps H).

    Orders 1-2 always use closed forms (block forms on degenerate spectra). Orders 3-4 use
    the closed walk forms when the spectrum is non-degenerate, H_nn = 0 and the coupling
    graph has at most ``closed_form_max_walks`` closed four-walks, quadrature otherwise.
    Orders above 4 always use quadrature.
    """
    settings = settings or get_settings()
    if K < 1:
        raise InvalidArgument(f"entropy_series: K must be >= 1, got {K}")
    require_same_dim(rho0.dim, H.dim, what="entropy_series")

    spec = decompose(rho0, cluster_tol=cluster_tol, settings=settings)
    Hb = to_eigenbasis(H, spec)
    support = restrict_to_support(spec, Hb, settings, "entropy_series")
    degenerate = any(stop - start > 1 for start, stop in support_clusters(spec, support))
    off_diagonal = float(np.max(np.abs(np.diagonal(support.hb)), initial=0.0)) <= settings.hermitian_tol
    logger.info(f"entropy_series: dim {spec.dim}, K={K}, degenerate={degenerate}, off_diagonal={off_diagonal}")

    coeffs = [derivative1(spec, Hb, settings)]
    methods = [Method.CLOSED_FORM]
    notes = []

    if K >= 2:
        if degenerate:
            d2 = derivative2_degenerate(block_decompose(spec, Hb, settings))
            notes.append("order 2 from cluster block form")
        else:
            d2 = derivative2(spec, Hb, settings)
        coeffs.append(d2 / 2.0)
        methods.append(Method.CLOSED_FORM)

    closed_higher = not degenerate and off_diagonal
    walks = closed_walk_count(support.hb, settings) if closed_higher and K >= 3 else 0
    if walks > settings.closed_form_max_walks:
        closed_higher = False
    if K >= 3 and not closed_higher:
        if degenerate:
            reason = "degenerate spectrum"
        elif not off_diagonal:
            reason = "nonzero diagonal H_nn"
        else:
            reason = f"{walks} closed walks exceed {settings.closed_form_max_walks}"
        logger.warning(f"entropy_series: orders >= 3 use quadrature ({reason})")
        notes.append(f"orders >= 3 by quadrature: {reason}")

    if K >= 3:
        if closed_higher:
            coeffs.append(q3(spec, Hb, settings))
            methods.append(Method.CLOSED_FORM)
        else:
            coeffs.append(derivative_n_quadrature(spec, Hb, 3, rel_tol, settings) / 6.0)
            methods.append(Method.QUADRATURE)

    if K >= 4:
        if closed_higher:
            coeffs.append(-sum(q4_terms(spec, Hb, settings)))
            methods.append(Method.CLOSED_FORM)
        else:
            coeffs.append(derivative_n_quadrature(spec, Hb, 4, rel_tol, settings) / 24.0)
            methods.append(Method.QUADRATURE)

    for k in range(5, K + 1):
        coeffs.append(derivative_n_quadrature(spec, Hb, k, rel_tol, settings) / math.factorial(k))
        methods.append(Method.QUADRATURE)

    series = EntropySeries(
        base_entropy=spectrum_entropy(spec.eigenvalues),
        coeffs=coeffs,
        methods=methods,
        notes=notes,
    )
    logger.debug(f"entropy_series: coefficients {series.coeffs}")
    return series
