import math

import numpy as np
from hypothesis import given, settings as hsettings
from hypothesis.strategies import integers
from numpy.testing import assert_allclose
from pytest import mark, raises
from scipy.stats import unitary_group

from settings.config import Settings
from spectral import (
    cluster_eigenvalues,
    decompose,
    entropy_exact,
    restrict_to_support,
    to_eigenbasis,
    validate_density,
    validate_perturbation,
)
from spectral.errors import (
    DimensionMismatch,
    InvalidArgument,
    NegativeEigenvalue,
    NotHermitian,
    NotTraceless,
    NullSpaceCoupling,
    TraceOutOfRange,
)
from states.fock import thermal_state

from .conftest import random_instance


def test_validate_density_accepts_diagonal():
    rho = validate_density(np.diag([0.75, 0.25]))
    assert rho.dim == 2
    assert not rho.mat.flags.writeable


@mark.parametrize("mat, error", (
    ([[0.5, 0.6], [0.6, 0.5]], NegativeEigenvalue),
    ([[0.5, 0.1j], [0.1j, 0.5]], NotHermitian),
    ([[0.5, 0.0], [0.0, 0.4]], TraceOutOfRange),
))
def test_validate_density_rejects(mat, error):
    with raises(error) as info:
        validate_density(mat)
    assert info.value.code == error.code


def test_validate_density_does_not_modify_input():
    mat = np.diag([0.75, 0.25]).astype(complex)
    validate_density(mat)
    assert mat.flags.writeable


def test_trace_deficit_allows_truncated_states():
    validate_density(np.diag([0.5, 0.25, 0.125]), trace_deficit=0.125)
    with raises(TraceOutOfRange):
        validate_density(np.diag([0.5, 0.25, 0.125]), trace_deficit=0.1)


def test_validate_perturbation_rejects_trace():
    with raises(NotTraceless):
        validate_perturbation(np.diag([0.1, 0.1]))


@mark.parametrize("eigs, sizes", (
    ([0.75, 0.25], [1, 1]),
    ([0.5, 0.25, 0.25], [1, 2]),
    ([0.4, 0.2, 0.2, 0.2], [1, 3]),
))
def test_decompose_clusters(eigs, sizes):
    spec = decompose(validate_density(np.diag(eigs)))
    assert spec.cluster_sizes == sizes
    assert_allclose(spec.eigenvalues, sorted(eigs, reverse=True))


def test_clusters_are_relative():
    # a thermal tail has gaps far below 1e-8 in absolute terms but is not degenerate
    eigs = 0.5 * 0.5 ** np.arange(60)
    assert len(cluster_eigenvalues(eigs)) == 60
    assert len(cluster_eigenvalues(eigs, cluster_tol=1e-3)) < 60


def test_decompose_rejects_bad_tolerance():
    with raises(InvalidArgument):
        decompose(validate_density(np.diag([0.75, 0.25])), cluster_tol=0.0)


def test_twomode_cluster_sizes():
    s = Settings(truncation_tol=0.1)
    rho = thermal_state(0.5, 6, s)
    rho2 = validate_density(np.kron(rho.mat, rho.mat), trace_deficit=1.0 - (1.0 - 0.5**6) ** 2, settings=s)
    spec = decompose(rho2, settings=s)
    assert spec.cluster_sizes[:6] == [1, 2, 3, 4, 5, 6]
    assert_allclose(spec.cluster_eigenvalues[:6], 0.25 * 0.5 ** np.arange(6))


@mark.parametrize("eigs, expected", (
    ([1.0, 0.0, 0.0], 0.0),
    ([0.5, 0.5], math.log(2.0)),
))
def test_entropy_exact(eigs, expected):
    assert math.isclose(entropy_exact(validate_density(np.diag(eigs))), expected, abs_tol=1e-12)


def test_thermal_entropy():
    # (N+1) log(N+1) - N log N with N = 1
    assert math.isclose(entropy_exact(thermal_state(0.5, 50)), 2.0 * math.log(2.0), abs_tol=1e-10)


@hsettings(max_examples=30, deadline=None)
@given(integers(0, 10_000), integers(2, 64))
def test_reconstruction_and_entropy_bounds(seed, dim):
    rho, _ = random_instance(seed, dim)
    spec = decompose(rho)
    assert_allclose(spec.reconstruct(), rho.mat, atol=1e-10)
    v = spec.eigenvectors
    assert_allclose(v.conj().T @ v, np.eye(rho.dim), atol=1e-10)
    assert 0.0 <= entropy_exact(rho) <= math.log(rho.dim) + 1e-10


@hsettings(max_examples=20, deadline=None)
@given(integers(0, 10_000))
def test_spectrum_is_unitarily_invariant(seed):
    rho, h = random_instance(seed, 4)
    u = unitary_group.rvs(4, random_state=seed + 1)
    rotated = validate_density(u @ rho.mat @ u.conj().T)
    a, b = decompose(rho), decompose(rotated)
    assert_allclose(a.eigenvalues, b.eigenvalues, atol=1e-12)
    assert a.cluster_sizes == b.cluster_sizes
    hb = to_eigenbasis(h, a)
    assert_allclose(np.linalg.eigvalsh(hb), np.linalg.eigvalsh(h.mat), atol=1e-10)


def test_to_eigenbasis_identity_basis(qubit):
    rho, h = qubit
    # eigenvector phases are free, magnitudes are not
    assert_allclose(np.abs(to_eigenbasis(h, decompose(rho))), np.abs(h.mat), atol=1e-15)


def test_to_eigenbasis_dimension_mismatch(qubit):
    rho, _ = qubit
    spec = decompose(rho)
    with raises(DimensionMismatch):
        restrict_to_support(spec, np.zeros((3, 3), dtype=complex))


def test_null_space_coupling():
    spec = decompose(validate_density(np.diag([1.0, 0.0])))
    with raises(NullSpaceCoupling):
        restrict_to_support(spec, np.array([[0.0, 0.1], [0.1, 0.0]], dtype=complex))
    support = restrict_to_support(spec, np.zeros((2, 2), dtype=complex))
    assert support.indices.tolist() == [0]
