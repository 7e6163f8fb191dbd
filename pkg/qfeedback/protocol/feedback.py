"""Probe-qubit output coherence with and without outcome-conditioned feedback.

The probe starts in the +1 eigenstate of X and picks up a Z phase through
U_SP = exp(-i sigma A (x) Z). After the system is measured with outcome m,
the feedback exp(+i sigma A(m) Z) is applied to the probe. Three
evaluations of <X>(out) are provided:

* no feedback, summed over the eigenbasis of A
* feedback, by explicit arithmetic on the joint system-probe space
* feedback, reduced to d x d system-space arithmetic

All exponentials are computed spectrally; sigma enters only as a parameter.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Tuple
import logging
import math

import numpy as np

from ..config import TOLERANCES
from ..errors import (
    DimensionMismatch,
    InvalidEstimate,
    LabelMismatch,
    NumericalInconsistency,
    ZeroProbability,
)
from ..linalg import (
    ComplexMatrix,
    dagger,
    hermitian_part,
    partial_trace_system,
    tensor,
    unitary_exp_i,
)
from ..model import (
    IDENTITY_2,
    PAULI_X,
    PAULI_Z,
    DensityMatrix,
    Effect,
    Label,
    Observable,
    Povm,
)

logger = logging.getLogger(__name__)

# Dimensionless integrated coupling, hbar = 1
CouplingStrength = float


def check_sigma(sigma: CouplingStrength) -> float:
    sigma = float(sigma)
    if not math.isfinite(sigma):
        raise ValueError(f"coupling strength must be finite, got {sigma}")
    return sigma


@dataclass(frozen=True)
class EstimateMap:
    """Feedback value A(m) for every outcome label"""
    entries: Mapping[Label, float]

    def __post_init__(self) -> None:
        entries: Dict[Label, float] = {}
        for label, value in dict(self.entries).items():
            value = float(value)
            if not math.isfinite(value):
                raise InvalidEstimate(f"estimate for outcome {label!r} is not finite: {value}")
            entries[label] = value
        object.__setattr__(self, "entries", entries)

    @classmethod
    def constant(cls, povm: Povm, value: float) -> "EstimateMap":
        return cls({label: value for label in povm.labels})

    def __getitem__(self, label: Label) -> float:
        return self.entries[label]

    def __iter__(self) -> Iterator[Label]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> Iterator[Tuple[Label, float]]:
        return iter(self.entries.items())

    def shifted(self, label: Label, delta: float) -> "EstimateMap":
        """Copy with A(label) replaced by A(label) + delta"""
        if label not in self.entries:
            raise LabelMismatch(f"no estimate for outcome {label!r}")
        entries = dict(self.entries)
        entries[label] += delta
        return EstimateMap(entries)

    def relabeled(self, mapping: Mapping[Label, Label]) -> "EstimateMap":
        return EstimateMap({mapping[label]: value for label, value in self.entries.items()})

    def require_labels(self, povm: Povm) -> None:
        expected = set(povm.labels)
        present = set(self.entries)
        if expected != present:
            missing = sorted(map(str, expected - present))
            extra = sorted(map(str, present - expected))
            raise LabelMismatch(
                f"label mismatch between estimates and POVM (missing: {missing}, extra: {extra})"
            )


@dataclass(frozen=True)
class ProbeOutput:
    """<X> of the probe qubit after the protocol"""
    x_expectation: float

    def __post_init__(self) -> None:
        if not abs(self.x_expectation) <= 1.0 + TOLERANCES.hermitian:
            raise NumericalInconsistency(f"probe <X> = {self.x_expectation} outside [-1, 1]")

    @property
    def decoherence(self) -> float:
        return 1.0 - self.x_expectation


def probe_plus_state() -> DensityMatrix:
    """|X=+1><X=+1|"""
    return DensityMatrix(0.5 * np.ones((2, 2), dtype=np.complex128))


def _check_dims(rho: DensityMatrix, a: Observable) -> int:
    if rho.dim != a.dim:
        raise DimensionMismatch(f"state dimension {rho.dim} != observable dimension {a.dim}")
    return rho.dim


def _check_scenario(rho: DensityMatrix, a: Observable, povm: Povm, est: EstimateMap) -> int:
    d = _check_dims(rho, a)
    if povm.dim != d:
        raise DimensionMismatch(f"POVM dimension {povm.dim} != system dimension {d}")
    est.require_labels(povm)
    return d


def interaction_unitary(a: Observable, sigma: CouplingStrength) -> ComplexMatrix:
    """U_SP = exp(-i sigma A (x) Z) on the joint space"""
    return unitary_exp_i(tensor(a.matrix, PAULI_Z), -check_sigma(sigma))


def feedback_unitary(estimate: float, sigma: CouplingStrength) -> ComplexMatrix:
    """U_Z(m) = exp(+i sigma A(m) Z) on the probe"""
    return unitary_exp_i(PAULI_Z, check_sigma(sigma) * float(estimate))


def probe_output_no_feedback(
    rho: DensityMatrix, a: Observable, sigma: CouplingStrength
) -> ProbeOutput:
    """sum_a <a|rho|a> cos(2 sigma A_a)"""
    _check_dims(rho, a)
    sigma = check_sigma(sigma)
    spectrum = a.spectrum
    v = spectrum.eigenvectors
    populations = np.real(np.diag(dagger(v) @ rho.matrix @ v))
    return ProbeOutput(float(np.sum(populations * np.cos(2.0 * sigma * spectrum.eigenvalues))))


def _evolved_joint_state(rho: DensityMatrix, a: Observable, sigma: float) -> ComplexMatrix:
    u_sp = interaction_unitary(a, sigma)
    return u_sp @ tensor(rho.matrix, probe_plus_state().matrix) @ dagger(u_sp)


def probe_output_feedback_joint(
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    est: EstimateMap,
    sigma: CouplingStrength,
) -> ProbeOutput:
    """sum_m Tr((E(m) (x) X) U_Z(m) U_SP (rho (x) rho_+) U_SP† U_Z(m)†)"""
    d = _check_scenario(rho, a, povm, est)
    sigma = check_sigma(sigma)
    evolved = _evolved_joint_state(rho, a, sigma)
    system_identity = np.eye(d, dtype=np.complex128)

    total = 0.0
    for effect in povm:
        u_z = tensor(system_identity, feedback_unitary(est[effect.label], sigma))
        out = u_z @ evolved @ dagger(u_z)
        total += float(np.real(np.trace(tensor(effect.matrix, PAULI_X) @ out)))
    return ProbeOutput(total)


def probe_output_feedback_reduced(
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    est: EstimateMap,
    sigma: CouplingStrength,
) -> ProbeOutput:
    """Re sum_m Tr(E(m) W_m rho W_m) with W_m = exp(i sigma (A - A(m)))"""
    _check_scenario(rho, a, povm, est)
    sigma = check_sigma(sigma)
    spectrum = a.spectrum

    total = 0.0
    # Zero-probability outcomes still contribute their term
    for effect in povm:
        w = spectrum.exp_i(sigma, shift=est[effect.label])
        total += float(np.real(np.trace(effect.matrix @ w @ rho.matrix @ w)))
    return ProbeOutput(total)


def _conditional_block(
    evolved: ComplexMatrix, effect: Effect, d: int
) -> Tuple[float, ComplexMatrix]:
    """p(m) and the unnormalized probe state Tr_S((E (x) I) rho_joint)"""
    block = partial_trace_system(tensor(effect.matrix, IDENTITY_2) @ evolved, d)
    block = hermitian_part(block)
    return float(np.real(np.trace(block))), block


def conditional_probe_state(
    rho: DensityMatrix, a: Observable, e: Effect, sigma: CouplingStrength
) -> Tuple[float, DensityMatrix]:
    """Outcome probability and the normalized probe state conditioned on it"""
    d = _check_dims(rho, a)
    if e.dim != d:
        raise DimensionMismatch(f"effect dimension {e.dim} != system dimension {d}")
    p, block = _conditional_block(_evolved_joint_state(rho, a, check_sigma(sigma)), e, d)
    if p <= TOLERANCES.probability_floor:
        raise ZeroProbability(f"outcome {e.label!r} has probability {p:.3e}")
    return p, DensityMatrix(block / p)


def conditional_probe_table(
    rho: DensityMatrix, a: Observable, povm: Povm, sigma: CouplingStrength
) -> Dict[Label, Tuple[float, ComplexMatrix]]:
    """(p(m), unnormalized probe state) for every outcome, sharing one evolution"""
    d = _check_dims(rho, a)
    if povm.dim != d:
        raise DimensionMismatch(f"POVM dimension {povm.dim} != system dimension {d}")
    evolved = _evolved_joint_state(rho, a, check_sigma(sigma))
    return {effect.label: _conditional_block(evolved, effect, d) for effect in povm}
