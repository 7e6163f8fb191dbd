"""Shot-by-shot virtual experiment of the feedback protocol.

Each shot draws the system outcome m from Tr((E(m) (x) I) rho_joint), applies
the feedback for A(m) to the conditional probe state and reads the probe X
as +1 or -1. Only E(m) enters the probe statistics, so no Kraus operators
are needed for the system measurement.

Random-number contract: per shot, one uniform for the outcome, then one for
the probe. Shots are grouped in fixed-size blocks; block k uses the k-th
child of SeedSequence(seed). Workers only distribute blocks and tallies are
summed in block order, so results do not depend on the worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple
import logging
import math

import numpy as np

from ..config import DEFAULT_WORKERS, MC_BLOCK_SIZE, TOLERANCES
from ..errors import NumericalInconsistency
from ..linalg import dagger
from ..model import PAULI_X, DensityMatrix, Label, Observable, Povm
from .feedback import (
    CouplingStrength,
    EstimateMap,
    check_sigma,
    conditional_probe_table,
    feedback_unitary,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShotResult:
    label: Label
    estimate: float
    probe_x: int

    def __post_init__(self) -> None:
        if self.probe_x not in (-1, 1):
            raise ValueError(f"probe reading must be +1 or -1, got {self.probe_x}")


@dataclass(frozen=True)
class EnsembleEstimate:
    """Sample mean of the probe readings with its standard error"""
    shots: int
    mean_x: float
    stderr: float
    seed: int
    outcome_counts: Dict[Label, int]


@dataclass
class _Tally:
    shots: int
    plus: int
    outcome_counts: np.ndarray

    def __iadd__(self, other: "_Tally") -> "_Tally":
        self.shots += other.shots
        self.plus += other.plus
        self.outcome_counts = self.outcome_counts + other.outcome_counts
        return self


class ShotSampler:
    """Outcome distribution and post-feedback probe <X> for one scenario"""

    def __init__(
        self,
        rho: DensityMatrix,
        a: Observable,
        povm: Povm,
        est: EstimateMap,
        sigma: CouplingStrength,
    ):
        est.require_labels(povm)
        sigma = check_sigma(sigma)
        self.labels: List[Label] = povm.labels
        self.estimates = np.array([est[label] for label in self.labels])

        table = conditional_probe_table(rho, a, povm, sigma)
        probabilities = np.zeros(len(self.labels))
        x_after = np.ones(len(self.labels))
        for k, label in enumerate(self.labels):
            p, block = table[label]
            if p <= TOLERANCES.probability_floor:
                continue
            u = feedback_unitary(est[label], sigma)
            state = u @ (block / p) @ dagger(u)
            probabilities[k] = p
            x_after[k] = float(np.real(np.trace(PAULI_X @ state)))

        total = probabilities.sum()
        if not abs(total - 1.0) <= TOLERANCES.hermitian:
            raise NumericalInconsistency(f"outcome probabilities sum to {total:.12g}")
        self.probabilities = probabilities / total
        self.x_after = np.clip(x_after, -1.0, 1.0)
        self._cumulative = np.cumsum(self.probabilities)
        self._cumulative[-1] = 1.0
        self._p_plus = 0.5 * (1.0 + self.x_after)

    @property
    def exact_mean(self) -> float:
        return float(np.dot(self.probabilities, self.x_after))

    def _outcome_index(self, u: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._cumulative, u, side="right")
        return np.minimum(idx, len(self.labels) - 1)

    def shot(self, rng: np.random.Generator) -> ShotResult:
        k = int(self._outcome_index(np.asarray(rng.random())))
        x = 1 if rng.random() < self._p_plus[k] else -1
        return ShotResult(self.labels[k], float(self.estimates[k]), x)

    def tally(self, shots: int, rng: np.random.Generator) -> _Tally:
        """Vectorized shots; row i of the (shots, 2) draw is (outcome, probe)"""
        u = rng.random((shots, 2))
        idx = self._outcome_index(u[:, 0])
        plus = u[:, 1] < self._p_plus[idx]
        return _Tally(
            shots=shots,
            plus=int(np.count_nonzero(plus)),
            outcome_counts=np.bincount(idx, minlength=len(self.labels)),
        )


def simulate_shot(
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    est: EstimateMap,
    sigma: CouplingStrength,
    rng: np.random.Generator,
) -> ShotResult:
    return ShotSampler(rho, a, povm, est, sigma).shot(rng)


def _block_sizes(shots: int, block_size: int) -> List[int]:
    full, rest = divmod(shots, block_size)
    return [block_size] * full + ([rest] if rest else [])


def estimate_probe_x(
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    est: EstimateMap,
    sigma: CouplingStrength,
    shots: int,
    seed: int,
    workers: int = DEFAULT_WORKERS,
    block_size: int = MC_BLOCK_SIZE,
) -> EnsembleEstimate:
    """Monte Carlo estimate of <X>(out); deterministic for a given seed"""
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")

    sampler = ShotSampler(rho, a, povm, est, sigma)
    sizes = _block_sizes(shots, block_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs: List[Tuple[int, np.random.SeedSequence]] = list(zip(sizes, children))

    def run(job: Tuple[int, np.random.SeedSequence]) -> _Tally:
        n, child = job
        return sampler.tally(n, np.random.default_rng(child))

    logger.debug(f"Monte Carlo: {shots} shots in {len(sizes)} blocks on {workers} worker(s)")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(run, jobs))
    else:
        tallies = [run(job) for job in jobs]

    total = _Tally(0, 0, np.zeros(len(sampler.labels), dtype=np.int64))
    for t in tallies:
        total += t

    mean = (2.0 * total.plus - total.shots) / total.shots
    # Sample standard deviation of +-1 readings over sqrt(n); zero for one shot
    stderr = math.sqrt(max(1.0 - mean * mean, 0.0) / (total.shots - 1)) if total.shots > 1 else 0.0
    counts = {label: int(c) for label, c in zip(sampler.labels, total.outcome_counts)}
    return EnsembleEstimate(total.shots, mean, stderr, seed, counts)
