"""First and second entropy derivatives over a degenerate spectrum.

H is cut into blocks H_nm between eigenvalue clusters n and m; only Tr H_nn and the squared
Frobenius norms of the blocks enter, so both derivatives are invariant under any unitary
acting inside a cluster.
"""
import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from series.divided import log_ratio
from settings.config import Settings, get_settings
from spectral.decompose import SpectralData, restrict_to_support, support_clusters
from spectral.matrices import ComplexMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockDecomposition:
    """Cluster blocks of H on the support of rho_0."""
    clusters: list[tuple[int, int]]
    blocks: dict[tuple[int, int], ComplexMatrix]
    cluster_eigenvalues: NDArray[np.float64]

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    def block(self, n: int, m: int) -> ComplexMatrix:
        return self.blocks[(n, m)]

    def traces(self) -> NDArray[np.float64]:
        """Tr H_nn per cluster."""
        return np.array([np.trace(self.blocks[(n, n)]).real for n in range(self.n_clusters)])

    def block_weights(self) -> NDArray[np.float64]:
        """sum_ij |(H_nm)_ij|^2 for every cluster pair."""
        k = self.n_clusters
        weights = np.zeros((k, k))
        for (n, m), block in self.blocks.items():
            weights[n, m] = float(np.sum(np.abs(block) ** 2))
        return weights

    def assemble(self) -> ComplexMatrix:
        """Reassemble the support-restricted H from its blocks."""
        dim = self.clusters[-1][1] if self.clusters else 0
        out = np.zeros((dim, dim), dtype=np.complex128)
        for (n, m), block in self.blocks.items():
            (rs, re), (cs, ce) = self.clusters[n], self.clusters[m]
            out[rs:re, cs:ce] = block
        return out


def block_decompose(spec: SpectralData, Hb: ComplexMatrix, settings: Settings | None = None) -> BlockDecomposition:
    """Split the eigenbasis perturbation into cluster blocks.

    Raises:
        NullSpaceCoupling: H couples into an eigenvalue below the floor.
    """
    settings = settings or get_settings()
    support = restrict_to_support(spec, Hb, settings, "block_decompose")
    clusters = support_clusters(spec, support)
    blocks = {
        (n, m): support.hb[rs:re, cs:ce].copy()
        for n, (rs, re) in enumerate(clusters)
        for m, (cs, ce) in enumerate(clusters)
    }
    energies = np.array([support.eigenvalues[start:stop].mean() for start, stop in clusters])
    logger.debug(f"block_decompose: {len(clusters)} clusters, largest {max((e - s for s, e in clusters), default=0)}")
    return BlockDecomposition(clusters=clusters, blocks=blocks, cluster_eigenvalues=energies)


def derivative1_degenerate(bd: BlockDecomposition) -> float:
    """-sum_n Tr(H_nn) log E_n."""
    return float(-np.sum(bd.traces() * np.log(bd.cluster_eigenvalues)))


def derivative2_degenerate(bd: BlockDecomposition) -> float:
    """-sum_n |H_nn|_F^2 / E_n - 2 sum_{n != m} |H_nm|_F^2 log E_n / (E_n - E_m)."""
    e = bd.cluster_eigenvalues
    weights = bd.block_weights()
    diagonal = np.diagonal(weights)
    off = np.triu(weights, k=1)
    ratios = log_ratio(e[:, None], e[None, :])
    # pairing (n, m) with (m, n) turns the ordered sum into log_ratio over n < m
    return float(-np.sum(diagonal / e) - 2.0 * np.sum(np.triu(off * ratios, k=1)))
