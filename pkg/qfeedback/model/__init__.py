"""Quantum states, observables and measurements"""

from .basis import IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z, ket, theta_state, x_basis, z_basis
from .random import (
    random_basis,
    random_density_matrix,
    random_observable,
    random_povm,
    random_pure_state,
    random_unitary,
)
from .states import (
    DensityMatrix,
    Effect,
    Label,
    Observable,
    Povm,
    expectation,
    maximally_mixed,
    outcome_probability,
    projective_povm_from_basis,
    pure_state,
    variance,
)

__all__ = [
    "IDENTITY_2",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "ket",
    "theta_state",
    "x_basis",
    "z_basis",
    "random_basis",
    "random_density_matrix",
    "random_observable",
    "random_povm",
    "random_pure_state",
    "random_unitary",
    "DensityMatrix",
    "Effect",
    "Label",
    "Observable",
    "Povm",
    "expectation",
    "maximally_mixed",
    "outcome_probability",
    "projective_povm_from_basis",
    "pure_state",
    "variance",
]
