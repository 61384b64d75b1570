import math

import numpy as np
from numpy.testing import assert_allclose
from pytest import mark, raises
from scipy.integrate import quad

from series.divided import log_ratio, resolvent_moment, xlogx_divided_difference
from series.quadrature import integrate_chains, resolvent_power_integral
from settings.config import Settings
from spectral.errors import InvalidArgument


def direct_moment(nodes):
    value, _ = quad(lambda t: t / np.prod([x + t for x in nodes]), 0.0, np.inf, epsabs=1e-14, epsrel=1e-12, limit=500)
    return value


@mark.parametrize("a, b", ((0.75, 0.25), (0.3, 0.3 * (1 + 1e-8)), (1e-6, 0.5)))
def test_log_ratio(a, b):
    expected = math.log1p((a - b) / b) / (a - b) if a != b else 1.0 / b
    assert math.isclose(float(log_ratio(a, b)), expected, rel_tol=1e-12)


def test_log_ratio_limit():
    assert float(log_ratio(0.4, 0.4)) == 1.0 / 0.4


@mark.parametrize("nodes", (
    [0.5, 0.3, 0.2],
    [0.5, 0.5, 0.2],
    [0.6, 0.25, 0.1, 0.05],
    [0.4, 0.4, 0.3, 0.2, 0.1],
    [0.3, 0.3, 0.3, 0.1, 0.1],
))
def test_resolvent_moment_matches_direct_integral(nodes):
    assert math.isclose(resolvent_moment(nodes), direct_moment(nodes), rel_tol=1e-9)


@mark.parametrize("a", (0.05, 0.3, 1.0))
def test_confluent_limits(a):
    assert math.isclose(resolvent_moment([a, a, a]), 1.0 / (2.0 * a), rel_tol=1e-12)
    assert math.isclose(resolvent_moment([a] * 5), 1.0 / (12.0 * a**3), rel_tol=1e-10)


@mark.parametrize("spread", (1e-12, 1e-9, 1e-6, 1e-4, 5e-3, 2e-2))
def test_near_coincident_nodes_are_continuous(spread):
    a = 0.2
    nodes = [a, a * (1 + spread), a * (1 + 2 * spread), a * (1 - spread), a]
    assert math.isclose(resolvent_moment(nodes), 1.0 / (12.0 * a**3), rel_tol=10 * spread + 1e-10)


def test_divided_difference_order_independent():
    nodes = [0.1, 0.7, 0.3, 0.3]
    assert math.isclose(xlogx_divided_difference(nodes), xlogx_divided_difference(nodes[::-1]), rel_tol=1e-13)


@mark.parametrize("nodes", ([0.5, 0.2], [0.5, -0.1, 0.2]))
def test_resolvent_moment_rejects(nodes):
    with raises(InvalidArgument):
        resolvent_moment(nodes)


def test_quadrature_second_order(qubit):
    # integral of Tr{t R H R H R} = -(1/2) d2S/deps2
    _, h = qubit
    energies = np.array([0.75, 0.25])
    value = resolvent_power_integral(energies, np.asarray(h.mat), 2)
    assert math.isclose(value, 0.02 * math.log(3.0), rel_tol=1e-10)


def test_quadrature_chains_match_moments():
    energies = np.array([0.5, 0.3, 0.2])
    hb = np.zeros((3, 3), dtype=complex)
    hb[0, 1] = hb[1, 0] = 0.01
    hb[1, 2], hb[2, 1] = 0.02 * np.exp(0.3j), 0.02 * np.exp(-0.3j)
    hb[0, 2] = hb[2, 0] = 0.015
    values = integrate_chains(energies, [[hb, hb, hb], [hb, hb]])
    product = hb[0, 1] * hb[1, 2] * hb[2, 0]
    # each cyclic orientation doubles the resolvent of its starting index
    doubled = sum(resolvent_moment([energies[i], *energies]) for i in range(3))
    expected = 2.0 * product.real * doubled
    assert math.isclose(values[0].real, expected, rel_tol=1e-9, abs_tol=1e-16)
    assert abs(values[0].imag) < 1e-14
    assert values[1].real > 0


def test_quadrature_rejects_short_chain():
    with raises(InvalidArgument):
        integrate_chains(np.array([0.5, 0.5]), [[np.eye(2)]])
    with raises(InvalidArgument):
        resolvent_power_integral(np.array([0.5, 0.5]), np.eye(2), 1)


def test_quadrature_threaded_matches_serial(qubit):
    _, h = qubit
    energies = np.array([0.75, 0.25])
    serial = resolvent_power_integral(energies, np.asarray(h.mat), 4)
    threaded = resolvent_power_integral(energies, np.asarray(h.mat), 4, settings=Settings(threads=2))
    assert math.isclose(serial, threaded, rel_tol=1e-9)
