"""Shared fixtures for the qfeedback test suite"""

from typing import Callable, Tuple

import numpy as np
import pytest

from qfeedback.model import (
    PAULI_Z,
    DensityMatrix,
    Observable,
    Povm,
    projective_povm_from_basis,
    pure_state,
    random_density_matrix,
    random_observable,
    random_povm,
    x_basis,
    z_basis,
)
from qfeedback.protocol import EstimateMap

Scenario = Tuple[DensityMatrix, Observable, Povm, EstimateMap]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def plus_state() -> DensityMatrix:
    return pure_state(x_basis()[0])


@pytest.fixture
def z_observable() -> Observable:
    return Observable(PAULI_Z)


@pytest.fixture
def z_povm() -> Povm:
    return projective_povm_from_basis(z_basis(), [0, 1])


@pytest.fixture
def x_povm() -> Povm:
    return projective_povm_from_basis(x_basis(), ["+", "-"])


def make_random_scenario(dim: int, rng: np.random.Generator, n_effects: int = 3) -> Scenario:
    """Mixed state, unit-norm observable, random POVM and estimates in [-1, 1]"""
    rho = random_density_matrix(dim, rng)
    a = random_observable(dim, rng)
    povm = random_povm(dim, n_effects, rng)
    est = EstimateMap({label: float(rng.uniform(-1.0, 1.0)) for label in povm.labels})
    return rho, a, povm, est


@pytest.fixture
def random_scenario(rng: np.random.Generator) -> Callable[..., Scenario]:
    def factory(dim: int = 3, n_effects: int = 3) -> Scenario:
        return make_random_scenario(dim, rng, n_effects)

    return factory
