import math

import numpy as np
from numpy.testing import assert_allclose
from pytest import mark, raises

from series import entropy_series
from settings.config import Settings
from spectral import entropy_exact
from spectral.errors import InvalidArgument, TruncationTooCoarse
from states import (
    FockStateSpec,
    default_dimension,
    displaced_thermal_state,
    displaced_thermal_terms,
    displacement_operator,
    ladder_operators,
    onemode_perturbation,
    thermal_state,
    twomode_state_and_perturbation,
)


def test_ladder_operators():
    a, adag = ladder_operators(4)
    assert_allclose(np.diag(a, k=1), np.sqrt([1, 2, 3]))
    assert_allclose(np.diag(adag @ a), [0, 1, 2, 3])


def test_thermal_state_vacuum_limit():
    rho = thermal_state(1e-9, 4)
    assert_allclose(np.diag(rho.mat).real, [1 - 1e-9, 0, 0, 0], atol=1e-8)
    assert entropy_exact(rho) < 1e-7


def test_thermal_state_trace_deficit():
    rho = thermal_state(0.5, 10)
    assert math.isclose(rho.trace_deficit, 2.0**-10)
    assert math.isclose(1.0 - np.trace(rho.mat).real, 2.0**-10, rel_tol=1e-12)


def test_truncation_too_coarse():
    with raises(TruncationTooCoarse):
        thermal_state(0.9, 10)


@mark.parametrize("v", (0.0, 1.0, -0.2))
def test_invalid_thermal_ratio(v):
    with raises(InvalidArgument):
        FockStateSpec(v=v).resolve()


@mark.parametrize("v, expected", ((0.5, 40), (0.7, 78), (0.999, 200)))
def test_default_dimension(v, expected):
    assert default_dimension(v) == expected


def test_onemode_perturbation_entries():
    h = onemode_perturbation(FockStateSpec(v=0.5, alpha=1.0, D=3), Settings(truncation_tol=0.5)).mat
    assert_allclose(np.diag(h), 0.0, atol=1e-16)
    assert math.isclose(h[1, 0].real, 0.25)
    assert_allclose(h, h.conj().T)


def test_onemode_perturbation_zero_amplitude():
    h = onemode_perturbation(FockStateSpec(v=0.5, alpha=0.0, D=20)).mat
    assert not np.any(h)


def test_twomode_structure():
    rho, h = twomode_state_and_perturbation(FockStateSpec(v=0.5, alpha=1.0, D=20))
    assert rho.dim == 400
    assert_allclose(np.diag(rho.mat).real.reshape(20, 20)[2, 3], 0.25 * 0.5**5)
    # alpha* a1^dagger a2^dagger rho moves |j, k> to |j+1, k+1>
    j, k, D = 1, 2, 20
    expected = 0.25 * math.sqrt((j + 1) * (k + 1)) * 0.25 * 0.5 ** (j + k)
    assert math.isclose(h.mat[(j + 1) * D + k + 1, j * D + k].real, expected, rel_tol=1e-12)
    assert abs(np.trace(h.mat)) < 1e-15


def test_twomode_zero_amplitude():
    rho, h = twomode_state_and_perturbation(FockStateSpec(v=0.5, alpha=0.0, D=20))
    assert not np.any(h.mat)
    single = entropy_exact(thermal_state(0.5, 20))
    assert math.isclose(entropy_exact(rho), 2 * single, abs_tol=1e-10)


def test_displaced_terms():
    ps = displaced_thermal_terms(FockStateSpec(v=0.5, alpha=1.0, D=60))
    assert ps.max_order == 2
    h2 = ps.term(2).mat
    assert abs(np.trace(h2)) < 1e-14
    log_rho = np.log((1 - 0.5) * 0.5 ** np.arange(60))
    assert math.isclose(-np.sum(np.diag(h2).real * log_rho), -math.log(0.5), abs_tol=1e-8)


def test_displaced_terms_zero_amplitude():
    ps = displaced_thermal_terms(FockStateSpec(v=0.5, alpha=0.0, D=30))
    assert all(not np.any(t.mat) for t in ps.terms)


def test_displacement_is_unitary_on_low_levels():
    d = displacement_operator(0.3, 10)
    assert_allclose((d.conj().T @ d)[:3, :3], np.eye(3), atol=1e-10)


@mark.parametrize("eps", (0.05, 0.2))
def test_displacement_preserves_entropy(eps):
    fs = FockStateSpec(v=0.5, alpha=1.0, D=60)
    shifted = displaced_thermal_state(fs, eps)
    # both states lose only the v^D tail, far below the truncation tolerance
    assert math.isclose(entropy_exact(shifted), entropy_exact(thermal_state(0.5, 60)), abs_tol=1e-10)


@mark.parametrize("v, dim", ((0.5, 30), (0.3, 16)))
def test_doubling_cutoff_moves_coefficients_by_tail(v, dim):
    def coefficients(D):
        fs = FockStateSpec(v=v, alpha=1.0, D=D)
        return entropy_series(thermal_state(v, D), onemode_perturbation(fs), 4).coeffs

    # edge couplings grow like sqrt(D), so the bound is D^2 v^D rather than v^D
    bound = dim**2 * v**dim
    assert_allclose(coefficients(dim), coefficients(2 * dim), rtol=0.0, atol=bound)
