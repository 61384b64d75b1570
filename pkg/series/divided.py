"""Closed-form resolvent integrals via divided differences of x log x.

Every closed form in the series modules is built from

    I(x_1, ..., x_k) = integral_0^inf t / prod_i (x_i + t) dt = (-1)^(k-1) f[x_1, ..., x_k],

with f(x) = x log x and f[...] the (possibly confluent) divided difference, k >= 3.
"""
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from spectral.errors import InvalidArgument

# |a - b| below this fraction of b switches log_ratio to its series
LOG_RATIO_SWITCH = 1e-6
# node spread (relative to the mean) below which the Taylor form is used
SERIES_SPREAD = 1e-2
# nodes closer than this (relative) are treated as coincident in the Newton table
COINCIDENT = 1e-13
MAX_SERIES_TERMS = 80


def log_ratio(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """log(a/b) / (a - b), finite as a -> b (limit 1/b)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    r = (a - b) / b
    near = np.abs(r) < LOG_RATIO_SWITCH
    series = (1.0 - r / 2.0 + r**2 / 3.0 - r**3 / 4.0) / b
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.log(a / b) / (a - b)
    return np.where(near, series, direct)


def _xlogx_taylor(x: float, order: int) -> float:
    """f^(order)(x) / order! for f(x) = x log x."""
    if order == 0:
        return x * math.log(x)
    if order == 1:
        return math.log(x) + 1.0
    return (-1) ** order / (order * (order - 1) * x ** (order - 1))


def _divided_difference_series(nodes: NDArray[np.float64]) -> float:
    k = len(nodes)
    c = float(nodes.mean())
    delta = (nodes - c) / c
    power_sums = [float(np.sum(delta**i)) for i in range(MAX_SERIES_TERMS + 1)]
    h = [1.0]
    total = 0.0
    for j in range(MAX_SERIES_TERMS):
        if j > 0:
            h.append(sum(power_sums[i] * h[j - i] for i in range(1, j + 1)) / j)
        p = k - 1 + j
        term = (-1) ** p * h[j] / (p * (p - 1))
        total += term
        if j >= 2 and abs(term) <= 1e-17 * abs(total):
            break
    return total / c ** (k - 2)


def _divided_difference_table(nodes: NDArray[np.float64]) -> float:
    x = nodes
    k = len(x)
    table = [_xlogx_taylor(float(xi), 0) for xi in x]
    for j in range(1, k):
        nxt = []
        for i in range(k - j):
            lo, hi = float(x[i]), float(x[i + j])
            if hi - lo <= COINCIDENT * hi:
                nxt.append(_xlogx_taylor(lo, j))
            elif j == 1:
                # x log x difference quotient written as log lo + hi * log_ratio(hi, lo)
                nxt.append(math.log(lo) + hi * float(log_ratio(hi, lo)))
            else:
                nxt.append((table[i + 1] - table[i]) / (hi - lo))
        table = nxt
    return table[0]


def xlogx_divided_difference(nodes: Sequence[float] | NDArray[np.float64]) -> float:
    """Divided difference of x log x over positive nodes, repeated nodes allowed."""
    x = np.sort(np.asarray(nodes, dtype=float))
    if len(x) == 0:
        raise InvalidArgument("divided difference needs at least one node")
    if x[0] <= 0:
        raise InvalidArgument(f"divided difference of x log x needs positive nodes, got {x[0]:.3e}")
    c = float(x.mean())
    if len(x) >= 3 and (x[-1] - x[0]) <= SERIES_SPREAD * c:
        return _divided_difference_series(x)
    return _divided_difference_table(x)


def resolvent_moment(nodes: Sequence[float] | NDArray[np.float64]) -> float:
    """integral_0^inf t / prod_i (x_i + t) dt for three or more positive nodes."""
    k = len(nodes)
    if k < 3:
        raise InvalidArgument(f"resolvent moment diverges for {k} nodes; need at least 3")
    return (-1) ** (k - 1) * xlogx_divided_difference(nodes)
