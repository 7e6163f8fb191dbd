"""Sigma sweep: one ResultRow per coupling strength"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple
import logging

import numpy as np

from ..config import DEFAULT_WORKERS, TOLERANCES
from ..errors import NumericalInconsistency
from ..model import expectation
from ..protocol import (
    EstimateMap,
    EstimateStrategy,
    UncertaintyReport,
    WeakValueReport,
    estimate_probe_x,
    ozawa_uncertainty,
    probe_output_feedback_joint,
    probe_output_feedback_reduced,
    probe_output_no_feedback,
    variance_residual,
    weak_value_estimates,
)
from .parser import ScenarioSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResultRow:
    sigma: float
    x_no_feedback: float
    x_feedback: float
    x_feedback_joint: float
    residual: float
    predicted_residual: float
    variance_model: Optional[float] = None
    mc_mean: Optional[float] = None
    mc_stderr: Optional[float] = None


@dataclass(frozen=True)
class SweepHeader:
    """Sigma-independent quantities reported once per scenario"""
    name: str
    dimension: int
    strategy: EstimateStrategy
    estimates: EstimateMap
    uncertainty: UncertaintyReport
    weak_values: WeakValueReport
    mean: float

    @property
    def epsilon_squared(self) -> float:
        return self.uncertainty.epsilon_squared

    @property
    def variance(self) -> float:
        return self.uncertainty.variance


@dataclass(frozen=True)
class SweepResult:
    header: SweepHeader
    rows: Tuple[ResultRow, ...]


def analyze(spec: ScenarioSpec) -> SweepHeader:
    return SweepHeader(
        name=spec.name,
        dimension=spec.dimension,
        strategy=spec.strategy,
        estimates=spec.estimates,
        uncertainty=ozawa_uncertainty(spec.state, spec.observable, spec.povm, spec.estimates),
        weak_values=weak_value_estimates(spec.state, spec.observable, spec.povm),
        mean=expectation(spec.observable, spec.state),
    )


def point_seed(seed: int, index: int) -> int:
    """Monte Carlo seed of the index-th sigma point"""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def evaluate_point(
    spec: ScenarioSpec,
    header: SweepHeader,
    index: int,
    sigma: float,
    cross_check: float = TOLERANCES.cross_check,
) -> ResultRow:
    rho, a, povm, est = spec.state, spec.observable, spec.povm, spec.estimates

    x_none = probe_output_no_feedback(rho, a, sigma).x_expectation
    x_reduced = probe_output_feedback_reduced(rho, a, povm, est, sigma).x_expectation
    x_joint = probe_output_feedback_joint(rho, a, povm, est, sigma).x_expectation
    if not abs(x_reduced - x_joint) <= cross_check:
        raise NumericalInconsistency(
            f"sigma = {sigma:.6g}: reduced <X> = {x_reduced:.15g} but joint <X> = {x_joint:.15g}"
        )

    variance_model: Optional[float] = None
    if abs(header.mean) <= TOLERANCES.hermitian:
        variance_model = variance_residual(rho, a, sigma)

    mc_mean: Optional[float] = None
    mc_stderr: Optional[float] = None
    if spec.monte_carlo is not None:
        ensemble = estimate_probe_x(
            rho, a, povm, est, sigma,
            shots=spec.monte_carlo.shots,
            seed=point_seed(spec.monte_carlo.seed, index),
        )
        mc_mean, mc_stderr = ensemble.mean_x, ensemble.stderr

    return ResultRow(
        sigma=sigma,
        x_no_feedback=x_none,
        x_feedback=x_reduced,
        x_feedback_joint=x_joint,
        residual=1.0 - x_reduced,
        predicted_residual=header.uncertainty.predicted_residual(sigma),
        variance_model=variance_model,
        mc_mean=mc_mean,
        mc_stderr=mc_stderr,
    )


def run_sweep(
    spec: ScenarioSpec,
    workers: int = DEFAULT_WORKERS,
    cross_check: float = TOLERANCES.cross_check,
) -> SweepResult:
    """Evaluate every sigma point of the scenario; rows come back in sweep order"""
    header = analyze(spec)
    sigmas = spec.sweep.values()
    logger.debug(f"Sweeping {len(sigmas)} sigma points for {spec.name!r} on {workers} worker(s)")

    def run(job: Tuple[int, float]) -> ResultRow:
        index, sigma = job
        return evaluate_point(spec, header, index, sigma, cross_check)

    jobs = list(enumerate(sigmas))
    rows: List[ResultRow]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(job) for job in jobs]
    return SweepResult(header, tuple(rows))
