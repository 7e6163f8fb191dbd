"""Built-in scenarios that reproduce the qualitative claims of the protocol"""

from pathlib import Path
from typing import Callable, Dict, List
import logging
import math

import numpy as np

from ..errors import ValidationError
from ..model import (
    PAULI_Z,
    Observable,
    Povm,
    projective_povm_from_basis,
    pure_state,
    random_density_matrix,
    random_observable,
    random_povm,
    theta_state,
    x_basis,
    z_basis,
)
from ..protocol import EstimateStrategy
from .parser import ScenarioSpec, load_scenario

logger = logging.getLogger(__name__)

PRESET_DIR = Path(__file__).parent / "presets"

DEFAULT_THETA = math.pi / 8
QUTRIT_SEED = 20240611

PRESET_FILES: Dict[str, str] = {
    "eigenbasis": "qubit-eigenbasis.json",
    "xbasis-theta": "qubit-xbasis-theta.json",
    "orthogonal-blind": "qubit-orthogonal-blind.json",
    "no-measurement": "qubit-no-measurement.json",
}

PRESET_DESCRIPTIONS: Dict[str, str] = {
    "eigenbasis": "|+>, A = Z, Z-basis projectors, eigenvalue estimates: perfect compensation",
    "xbasis-theta": "cos(t)|0> + sin(t)|1>, A = Z, X-basis, weak values (one anomalous at t = pi/8)",
    "orthogonal-blind": "|+>, A = Z, X-basis: minimal eps^2 = 1 whatever the estimates",
    "no-measurement": "|+>, A = Z, POVM {I}, mean estimate: eps^2 = Delta A^2",
    "qutrit-random": f"random qutrit state, observable and 4-outcome POVM (seed {QUTRIT_SEED})",
}

_PLUS = x_basis()[0]


def eigenbasis() -> ScenarioSpec:
    return ScenarioSpec(
        name="eigenbasis",
        state=pure_state(_PLUS),
        observable=Observable(PAULI_Z),
        povm=projective_povm_from_basis(z_basis(), [0, 1]),
        strategy=EstimateStrategy.EIGENVALUE,
    )


def xbasis_theta(theta: float = DEFAULT_THETA) -> ScenarioSpec:
    return ScenarioSpec(
        name="xbasis-theta",
        state=pure_state(theta_state(theta)),
        observable=Observable(PAULI_Z),
        povm=projective_povm_from_basis(x_basis(), ["+", "-"]),
        strategy=EstimateStrategy.WEAK_VALUE,
    )


def orthogonal_blind() -> ScenarioSpec:
    return ScenarioSpec(
        name="orthogonal-blind",
        state=pure_state(_PLUS),
        observable=Observable(PAULI_Z),
        povm=projective_povm_from_basis(x_basis(), ["+", "-"]),
        strategy=EstimateStrategy.WEAK_VALUE,
    )


def no_measurement() -> ScenarioSpec:
    return ScenarioSpec(
        name="no-measurement",
        state=pure_state(_PLUS),
        observable=Observable(PAULI_Z),
        povm=Povm.trivial(2),
        strategy=EstimateStrategy.MEAN,
    )


def qutrit_random(seed: int = QUTRIT_SEED) -> ScenarioSpec:
    rng = np.random.default_rng(seed)
    return ScenarioSpec(
        name="qutrit-random",
        state=random_density_matrix(3, rng),
        observable=random_observable(3, rng),
        povm=random_povm(3, 4, rng),
        strategy=EstimateStrategy.WEAK_VALUE,
    )


def builtin_scenarios(theta: float = DEFAULT_THETA) -> List[ScenarioSpec]:
    return [eigenbasis(), xbasis_theta(theta), orthogonal_blind(), no_measurement(), qutrit_random()]


def get_preset(name: str, theta: float = DEFAULT_THETA) -> ScenarioSpec:
    builders: Dict[str, Callable[[], ScenarioSpec]] = {
        "eigenbasis": eigenbasis,
        "xbasis-theta": lambda: xbasis_theta(theta),
        "orthogonal-blind": orthogonal_blind,
        "no-measurement": no_measurement,
        "qutrit-random": qutrit_random,
    }
    if name not in builders:
        raise ValidationError(f"unknown preset {name!r}; choose from {', '.join(builders)}")
    logger.debug(f"Building preset {name}")
    return builders[name]()


def preset_path(name: str) -> Path:
    if name not in PRESET_FILES:
        raise ValidationError(f"preset {name!r} has no shipped scenario file")
    return PRESET_DIR / PRESET_FILES[name]


def load_preset_file(name: str) -> ScenarioSpec:
    """Parse the shipped scenario document for a preset"""
    return load_scenario(preset_path(name))
