"""Ozawa uncertainty, weak-value estimates and small-sigma residual models"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from ..config import TOLERANCES
from ..errors import (
    DimensionMismatch,
    NoConvergence,
    NonzeroMean,
    NotProjective,
    NotPure,
    NumericalInconsistency,
    ValidationError,
)
from ..linalg import ComplexMatrix, hermitian_eig
from ..model import (
    DensityMatrix,
    Label,
    Observable,
    Povm,
    expectation,
    outcome_probability,
    projective_povm_from_basis,
    random_basis,
    variance,
)
from .feedback import CouplingStrength, EstimateMap, check_sigma

logger = logging.getLogger(__name__)


class EstimateStrategy(Enum):
    ZERO = "zero"
    MEAN = "mean"
    EIGENVALUE = "eigenvalue"
    WEAK_VALUE = "weak-value"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WeakValueEntry:
    label: Label
    weak_value: complex
    estimate: float
    probability: float
    degenerate: bool
    anomalous: bool

    @property
    def real(self) -> float:
        return self.weak_value.real

    @property
    def imag(self) -> float:
        return self.weak_value.imag


@dataclass(frozen=True)
class WeakValueReport:
    """Per-outcome weak values; degenerate outcomes carry estimate 0"""
    entries: Tuple[WeakValueEntry, ...]

    def __getitem__(self, label: Label) -> WeakValueEntry:
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)

    @property
    def estimates(self) -> EstimateMap:
        return EstimateMap({e.label: e.estimate for e in self.entries})

    @property
    def all_real(self) -> bool:
        return all(abs(e.imag) <= TOLERANCES.unitary for e in self.entries if not e.degenerate)


@dataclass(frozen=True)
class UncertaintyReport:
    """epsilon^2 = sum of per-outcome contributions, with the input variance"""
    epsilon_squared: float
    contributions: Dict[Label, float]
    variance: float

    def predicted_residual(self, sigma: CouplingStrength) -> float:
        return small_sigma_residual(self, sigma)


def _check(rho: DensityMatrix, a: Observable, povm: Povm) -> None:
    if not rho.dim == a.dim == povm.dim:
        raise DimensionMismatch(
            f"dimensions do not match: state {rho.dim}, observable {a.dim}, POVM {povm.dim}"
        )


def _real(value: complex, what: str) -> float:
    if not abs(value.imag) <= TOLERANCES.unitary:
        raise NumericalInconsistency(f"{what} has imaginary part {value.imag:.3e}")
    return value.real


def ozawa_uncertainty(
    rho: DensityMatrix, a: Observable, povm: Povm, est: EstimateMap
) -> UncertaintyReport:
    """epsilon^2 = sum_m Tr(E(m) (A - A(m)) rho (A - A(m)))"""
    _check(rho, a, povm)
    est.require_labels(povm)
    identity = np.eye(a.dim, dtype=np.complex128)

    contributions: Dict[Label, float] = {}
    for effect in povm:
        b = a.matrix - est[effect.label] * identity
        value = _real(complex(np.trace(effect.matrix @ b @ rho.matrix @ b)), f"contribution {effect.label!r}")
        if not value >= -TOLERANCES.unitary:
            raise NumericalInconsistency(f"negative contribution {value:.3e} for outcome {effect.label!r}")
        contributions[effect.label] = value

    return UncertaintyReport(
        epsilon_squared=max(sum(contributions.values()), 0.0),
        contributions=contributions,
        variance=variance(a, rho),
    )


def is_anomalous(value: float, a: Observable) -> bool:
    low, high = a.spectral_range
    margin = TOLERANCES.anomalous_margin
    return value < low - margin or value > high + margin


def weak_value_estimates(rho: DensityMatrix, a: Observable, povm: Povm) -> WeakValueReport:
    """Tr(E(m) A rho) / Tr(E(m) rho) per outcome; real part is the estimate"""
    _check(rho, a, povm)
    entries: List[WeakValueEntry] = []
    for effect in povm:
        p = outcome_probability(effect, rho)
        if p < TOLERANCES.probability_floor:
            logger.debug(f"Outcome {effect.label!r} is degenerate (p = {p:.3e})")
            entries.append(WeakValueEntry(effect.label, 0j, 0.0, p, True, False))
            continue
        wv = complex(np.trace(effect.matrix @ a.matrix @ rho.matrix)) / p
        anomalous = is_anomalous(wv.real, a)
        if anomalous:
            logger.info(f"Anomalous weak value {wv.real:.6g} for outcome {effect.label!r}")
        entries.append(WeakValueEntry(effect.label, wv, wv.real, p, False, anomalous))
    return WeakValueReport(tuple(entries))


def small_sigma_residual(report: UncertaintyReport, sigma: CouplingStrength) -> float:
    """2 sigma^2 epsilon^2"""
    sigma = check_sigma(sigma)
    return 2.0 * sigma * sigma * report.epsilon_squared


def variance_residual(rho: DensityMatrix, a: Observable, sigma: CouplingStrength) -> float:
    """2 sigma^2 Delta A^2, valid only for <A> = 0"""
    mean = expectation(a, rho)
    if abs(mean) > TOLERANCES.hermitian:
        raise NonzeroMean(f"variance model needs <A> = 0, got {mean:.6g}")
    sigma = check_sigma(sigma)
    return 2.0 * sigma * sigma * variance(a, rho)


def _projector_vector(matrix: ComplexMatrix, label: Label) -> np.ndarray:
    """|m> for a rank-1 projector |m><m|, else NotProjective"""
    tol = TOLERANCES.hermitian
    if float(np.max(np.abs(matrix @ matrix - matrix))) > tol or abs(np.trace(matrix).real - 1.0) > tol:
        raise NotProjective(f"effect {label!r} is not a rank-1 projector")
    return hermitian_eig(matrix).eigenvectors[:, -1]


def zero_error_closed_form(psi: DensityMatrix, a: Observable, povm: Povm) -> float:
    """sum_m p_m (Im WV_m)^2 plus |<m|A|psi>|^2 for outcomes with p_m = 0.

    Equals epsilon^2 at the weak-value estimates for a pure state measured
    with a rank-1 projective POVM.
    """
    _check(psi, a, povm)
    if not psi.is_pure:
        raise NotPure(f"state purity is {psi.purity:.12g}, expected 1")
    if len(povm) != povm.dim:
        raise NotProjective(f"{len(povm)} effects cannot be rank-1 projectors in dimension {povm.dim}")
    vec = hermitian_eig(psi.matrix).eigenvectors[:, -1]

    total = 0.0
    for effect in povm:
        m = _projector_vector(effect.matrix, effect.label)
        overlap = complex(np.vdot(m, vec))
        a_overlap = complex(np.vdot(m, a.matrix @ vec))
        p = abs(overlap) ** 2
        if p < TOLERANCES.probability_floor:
            total += abs(a_overlap) ** 2
        else:
            total += p * (a_overlap / overlap).imag ** 2
    return total


def optimize_estimates(
    rho: DensityMatrix, a: Observable, povm: Povm
) -> Tuple[EstimateMap, UncertaintyReport]:
    """Per-outcome minimizer of epsilon^2 (the weak-value real parts)"""
    est = weak_value_estimates(rho, a, povm).estimates
    return est, ozawa_uncertainty(rho, a, povm, est)


def estimate_gradient(
    rho: DensityMatrix, a: Observable, povm: Povm, est: EstimateMap
) -> Dict[Label, float]:
    """d epsilon^2 / d A(m) = -2 Re Tr(E(m) A rho) + 2 A(m) Tr(E(m) rho)"""
    _check(rho, a, povm)
    est.require_labels(povm)
    gradient: Dict[Label, float] = {}
    for effect in povm:
        cross = float(np.real(np.trace(effect.matrix @ a.matrix @ rho.matrix)))
        p = float(np.real(np.trace(effect.matrix @ rho.matrix)))
        gradient[effect.label] = -2.0 * cross + 2.0 * est[effect.label] * p
    return gradient


def eigenvalue_estimates(a: Observable, povm: Povm) -> EstimateMap:
    """Eigenvalue of A for each rank-1 projector onto an eigenvector of A"""
    if povm.dim != a.dim:
        raise DimensionMismatch(f"POVM dimension {povm.dim} != observable dimension {a.dim}")
    if len(povm) != povm.dim:
        raise ValidationError("eigenvalue strategy needs a rank-1 projective POVM")
    entries: Dict[Label, float] = {}
    for effect in povm:
        try:
            m = _projector_vector(effect.matrix, effect.label)
        except NotProjective as e:
            raise ValidationError(f"eigenvalue strategy needs a rank-1 projective POVM: {e}") from e
        a_m = a.matrix @ m
        value = float(np.real(np.vdot(m, a_m)))
        if not float(np.max(np.abs(a_m - value * m))) <= TOLERANCES.hermitian:
            raise ValidationError(
                f"eigenvalue strategy: outcome {effect.label!r} is not an eigenvector of the observable"
            )
        entries[effect.label] = value
    return EstimateMap(entries)


def strategy_estimates(
    strategy: EstimateStrategy,
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    custom: Optional[EstimateMap] = None,
) -> EstimateMap:
    """Resolve an estimate strategy to concrete feedback values"""
    if strategy is EstimateStrategy.ZERO:
        return EstimateMap.constant(povm, 0.0)
    if strategy is EstimateStrategy.MEAN:
        return EstimateMap.constant(povm, expectation(a, rho))
    if strategy is EstimateStrategy.EIGENVALUE:
        return eigenvalue_estimates(a, povm)
    if strategy is EstimateStrategy.WEAK_VALUE:
        return weak_value_estimates(rho, a, povm).estimates
    if custom is None:
        raise ValidationError("custom strategy needs explicit estimate values")
    try:
        custom.require_labels(povm)
    except ValueError as e:
        raise ValidationError(str(e)) from e
    return custom


def compare_strategies(
    rho: DensityMatrix, a: Observable, povm: Povm
) -> List[Tuple[EstimateStrategy, float]]:
    """epsilon^2 under every built-in strategy that applies to the scenario"""
    rows: List[Tuple[EstimateStrategy, float]] = []
    for strategy in (
        EstimateStrategy.ZERO,
        EstimateStrategy.MEAN,
        EstimateStrategy.EIGENVALUE,
        EstimateStrategy.WEAK_VALUE,
    ):
        try:
            est = strategy_estimates(strategy, rho, a, povm)
        except ValidationError as e:
            logger.debug(f"Strategy {strategy.value} not applicable: {e}")
            continue
        rows.append((strategy, ozawa_uncertainty(rho, a, povm, est).epsilon_squared))
    return rows


def find_real_weak_value_basis(
    psi: DensityMatrix,
    a: Observable,
    rng: np.random.Generator,
    attempts: int = 1000,
    tol: float = TOLERANCES.unitary,
) -> Povm:
    """Random search for a projective basis whose weak values are all real.

    Real orthogonal bases are drawn when both state and observable are real,
    Haar-random bases otherwise.
    """
    if not psi.is_pure:
        raise NotPure(f"state purity is {psi.purity:.12g}, expected 1")
    real = bool(np.all(np.abs(psi.matrix.imag) <= tol) and np.all(np.abs(a.matrix.imag) <= tol))
    for attempt in range(attempts):
        povm = projective_povm_from_basis(random_basis(psi.dim, rng, real=real))
        report = weak_value_estimates(psi, a, povm)
        if max((abs(e.imag) for e in report.entries), default=0.0) <= tol:
            logger.debug(f"Found real weak-value basis after {attempt + 1} draws")
            return povm
    raise NoConvergence(f"no basis with real weak values in {attempts} random draws")
