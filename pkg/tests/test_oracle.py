import math

import numpy as np
from hypothesis import given, settings as hsettings
from hypothesis.strategies import integers
from pytest import mark, raises

from oracle import (
    alternating_binomial_moment,
    convergence_sweep,
    fd_derivative,
    geometric_steps,
    oracle_triangle,
    quadrature_crosscheck,
    richardson_extrapolate,
)
from series import PerturbationSeries, entropy_series
from settings.config import Settings
from spectral import validate_density, validate_perturbation
from spectral.errors import InvalidArgument, StencilLeavesPSDCone

from .conftest import random_instance

# step large enough to keep entropy rounding out of the higher stencils
EPS0 = 0.5


def test_richardson_cancels_even_powers():
    f = lambda h: 3.0 + 2.0 * h**2 - 5.0 * h**4
    value, error = richardson_extrapolate([f(0.1 / 2**i) for i in range(3)], p=2)
    assert math.isclose(value, 3.0, abs_tol=1e-13)
    assert error >= 0


def test_richardson_needs_two_values():
    with raises(InvalidArgument):
        richardson_extrapolate([1.0], p=2)


def test_fd_second_order_qubit(qubit):
    estimate = fd_derivative(*qubit, 2)
    assert math.isclose(estimate.value, -0.04 * math.log(3.0), abs_tol=1e-7)
    assert len(estimate.steps_used) == Settings().fd_levels


def test_fd_first_order_thermal(onemode):
    estimate = fd_derivative(*onemode, 1)
    assert abs(estimate.value) < 1e-7
    assert math.isfinite(estimate.error_estimate)


def test_fd_shrinks_step_near_boundary():
    rho = validate_density(np.diag([0.9, 0.1]))
    h = validate_perturbation([[0.0, 0.2], [0.2, 0.0]])
    # rho +- 2 eps H leaves the cone for eps0 = 1, so the step must shrink
    estimate = fd_derivative(rho, h, 3, eps0=1.0)
    assert estimate.steps_used[0] < 1.0


def test_fd_gives_up():
    rho = validate_density(np.diag([1.0, 0.0]))
    h = validate_perturbation([[0.0, 0.1], [0.1, 0.0]])
    with raises(StencilLeavesPSDCone):
        fd_derivative(rho, h, 2, settings=Settings(fd_max_shrinks=3))


def test_fd_rejects_order():
    rho, h = random_instance(0, 3)
    with raises(InvalidArgument):
        fd_derivative(rho, h, 5)


@mark.parametrize("order", (2, 3))
def test_fd_stable_under_halving_step(order, qubit, onemode):
    for rho, h in (qubit, random_instance(5, 4), onemode):
        coarse = fd_derivative(rho, h, order, eps0=EPS0)
        fine = fd_derivative(rho, h, order, eps0=EPS0 / 2)
        bound = 4.0 * max(coarse.error_estimate, fine.error_estimate) + 1e-9
        assert abs(coarse.value - fine.value) <= bound


@mark.parametrize("n", range(13))
def test_alternating_binomial_moment(n):
    for m in range(n):
        assert alternating_binomial_moment(n, m) == 0
    assert alternating_binomial_moment(n, n) == (-1) ** n * math.factorial(n)


@mark.parametrize("n, m, expected", ((3, 2, 0), (3, 3, -6), (0, 0, 1)))
def test_alternating_binomial_moment_examples(n, m, expected):
    assert alternating_binomial_moment(n, m) == expected


def test_alternating_binomial_moment_range():
    with raises(InvalidArgument):
        alternating_binomial_moment(2, 3)


def test_crosscheck_onemode(onemode):
    rows = quadrature_crosscheck(*onemode, orders=(2, 3, 4))
    assert [r.order for r in rows] == [2, 3, 4]
    assert all(r.difference < 1e-8 for r in rows)


def test_crosscheck_zero_perturbation(qubit):
    rho, _ = qubit
    rows = quadrature_crosscheck(rho, validate_perturbation(np.zeros((2, 2))))
    assert all(abs(r.closed_form) < 1e-15 and abs(r.quadrature) < 1e-15 for r in rows)


@hsettings(max_examples=100, deadline=None)
@given(integers(0, 10_000), integers(2, 8))
def test_oracle_triangle(seed, dim):
    rho, h = random_instance(seed, dim)
    for order, fd_tol in ((2, 1e-6), (3, 1e-6), (4, 1e-4)):
        report = oracle_triangle(rho, h, order, eps0=EPS0)
        assert abs(report.closed_form - report.quadrature) < 1e-8
        assert abs(report.closed_form - report.finite_difference) < fd_tol
    first = fd_derivative(rho, h, 1, eps0=EPS0)
    assert abs(first.value) < 1e-6


def test_convergence_sweep_zero_perturbation(qubit):
    rho, _ = qubit
    h = validate_perturbation(np.zeros((2, 2)))
    series = entropy_series(rho, h, 2)
    rows = convergence_sweep(rho, PerturbationSeries(terms=[h]), series, geometric_steps(1e-1, 1e-3, 4))
    assert all(r.residual < 1e-15 for r in rows)


def test_geometric_steps():
    steps = geometric_steps(1e-1, 1e-3, 3)
    assert np.allclose(steps, [1e-1, 1e-2, 1e-3])
    with raises(InvalidArgument):
        geometric_steps(0.0, 1e-3, 3)
