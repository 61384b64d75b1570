"""Series result types."""
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import NDArray


class Method(str, Enum):
    """How a series coefficient was produced."""
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class EntropySeries:
    """Coefficients of S(rho_0 + eps H) = sum_k s_k eps^k, with s_k = (1/k!) d^kS/deps^k."""
    base_entropy: float
    coeffs: list[float]
    methods: list[Method]
    notes: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, k: int) -> float:
        """s_k, with s_0 the base entropy."""
        return self.base_entropy if k == 0 else self.coeffs[k - 1]

    def derivative(self, k: int) -> float:
        """d^kS/deps^k at eps = 0."""
        return math.factorial(k) * self.coefficient(k)

    def evaluate(self, eps: float) -> float:
        """Truncated series sum_{k <= K} s_k eps^k."""
        return self.base_entropy + sum(c * eps ** (k + 1) for k, c in enumerate(self.coeffs))

    def scaled(self, factor: float) -> "EntropySeries":
        return EntropySeries(
            base_entropy=self.base_entropy * factor,
            coeffs=[c * factor for c in self.coeffs],
            methods=list(self.methods),
            notes=list(self.notes),
        )

    def to_bits(self) -> "EntropySeries":
        return self.scaled(1.0 / math.log(2.0))


@dataclass(frozen=True)
class EigenvaluePerturbation:
    """First and second order eigenvalue corrections, one entry per eigenvalue."""
    first: NDArray[np.float64]
    second: NDArray[np.float64]
