"""Shared fixtures and random instance builders."""
import numpy as np
import pytest
from scipy.stats import unitary_group

from settings.config import Settings
from spectral.matrices import DensityMatrix, PerturbationOp, validate_density, validate_perturbation
from states.fock import FockStateSpec, onemode_perturbation, thermal_state

E_MIN = 0.05


def random_instance(
    seed: int,
    dim: int,
    off_diagonal: bool = True,
    rotate: bool = True,
) -> tuple[DensityMatrix, PerturbationOp]:
    """Non-degenerate rho_0 with eigenvalues >= min(E_MIN, 0.5 / dim) and ||H|| a quarter of that floor."""
    rng = np.random.default_rng(seed)
    e_min = min(E_MIN, 0.5 / dim)
    weights = rng.dirichlet(np.ones(dim))
    energies = e_min + (1.0 - e_min * dim) * weights
    energies = energies / energies.sum()

    hb = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    hb = hb + hb.conj().T
    if off_diagonal:
        np.fill_diagonal(hb, 0.0)
    else:
        hb = hb - np.trace(hb) / dim * np.eye(dim)
    hb *= (e_min / 4.0) / np.linalg.norm(hb, 2)

    u = unitary_group.rvs(dim, random_state=seed) if rotate and dim > 1 else np.eye(dim)
    rho = u @ np.diag(energies) @ u.conj().T
    h = u @ hb @ u.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    h = 0.5 * (h + h.conj().T)
    h = h - np.trace(h).real / dim * np.eye(dim)
    return validate_density(rho), validate_perturbation(h)


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def qubit() -> tuple[DensityMatrix, PerturbationOp]:
    """diag(0.75, 0.25) with an off-diagonal coupling of 0.1."""
    return validate_density(np.diag([0.75, 0.25])), validate_perturbation([[0.0, 0.1], [0.1, 0.0]])


@pytest.fixture
def qutrit_degenerate() -> DensityMatrix:
    return validate_density(np.diag([0.5, 0.25, 0.25]))


@pytest.fixture(scope="session")
def onemode() -> tuple[DensityMatrix, PerturbationOp]:
    """One-mode thermal state v = 0.5, alpha = 1, D = 60."""
    fs = FockStateSpec(v=0.5, alpha=1.0, D=60)
    return thermal_state(0.5, 60), onemode_perturbation(fs)
