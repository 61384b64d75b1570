"""Alternating binomial moment sums."""
import math

from spectral.errors import InvalidArgument

MAX_MOMENT_ORDER = 20


def alternating_binomial_moment(n: int, m: int) -> int:
    """sum_{l=0}^n (-1)^l C(n, l) l^m in exact integers; 0 for m < n, (-1)^n n! for m = n."""
    if not 0 <= m <= n <= MAX_MOMENT_ORDER:
        raise InvalidArgument(f"alternating_binomial_moment: need 0 <= m <= n <= {MAX_MOMENT_ORDER}, got n={n}, m={m}")
    return sum((-1) ** l * math.comb(n, l) * l**m for l in range(n + 1))
