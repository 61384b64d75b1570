"""Continuous-variable example states in truncated Fock bases."""
from states.fock import (
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

__all__ = [
    "FockStateSpec",
    "default_dimension",
    "displaced_thermal_state",
    "displaced_thermal_terms",
    "displacement_operator",
    "ladder_operators",
    "onemode_perturbation",
    "thermal_state",
    "twomode_state_and_perturbation",
]
