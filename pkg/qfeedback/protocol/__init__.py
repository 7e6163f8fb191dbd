"""Feedback protocol, uncertainty analysis and Monte Carlo experiments"""

from .convergence import ConvergenceReport, residual_convergence
from .feedback import (
    CouplingStrength,
    EstimateMap,
    ProbeOutput,
    check_sigma,
    conditional_probe_state,
    conditional_probe_table,
    feedback_unitary,
    interaction_unitary,
    probe_output_feedback_joint,
    probe_output_feedback_reduced,
    probe_output_no_feedback,
    probe_plus_state,
)
from .montecarlo import (
    EnsembleEstimate,
    ShotResult,
    ShotSampler,
    estimate_probe_x,
    simulate_shot,
)
from .uncertainty import (
    EstimateStrategy,
    UncertaintyReport,
    WeakValueEntry,
    WeakValueReport,
    compare_strategies,
    eigenvalue_estimates,
    estimate_gradient,
    find_real_weak_value_basis,
    is_anomalous,
    optimize_estimates,
    ozawa_uncertainty,
    small_sigma_residual,
    strategy_estimates,
    variance_residual,
    weak_value_estimates,
    zero_error_closed_form,
)

__all__ = [
    "ConvergenceReport",
    "residual_convergence",
    "CouplingStrength",
    "EstimateMap",
    "ProbeOutput",
    "check_sigma",
    "conditional_probe_state",
    "conditional_probe_table",
    "feedback_unitary",
    "interaction_unitary",
    "probe_output_feedback_joint",
    "probe_output_feedback_reduced",
    "probe_output_no_feedback",
    "probe_plus_state",
    "EnsembleEstimate",
    "ShotResult",
    "ShotSampler",
    "estimate_probe_x",
    "simulate_shot",
    "EstimateStrategy",
    "UncertaintyReport",
    "WeakValueEntry",
    "WeakValueReport",
    "compare_strategies",
    "eigenvalue_estimates",
    "estimate_gradient",
    "find_real_weak_value_basis",
    "is_anomalous",
    "optimize_estimates",
    "ozawa_uncertainty",
    "small_sigma_residual",
    "strategy_estimates",
    "variance_residual",
    "weak_value_estimates",
    "zero_error_closed_form",
]
