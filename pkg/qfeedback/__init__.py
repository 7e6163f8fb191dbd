"""qfeedback - outcome-conditioned feedback compensation of probe-qubit decoherence"""

__version__ = "0.1.0"

from .errors import QFeedbackError
from .main import ProcessingResult, SweepProcessor
from .model import DensityMatrix, Effect, Observable, Povm
from .protocol import (
    EstimateMap,
    ozawa_uncertainty,
    probe_output_feedback_joint,
    probe_output_feedback_reduced,
    probe_output_no_feedback,
    weak_value_estimates,
)
from .scenarios import ScenarioSpec, builtin_scenarios, emit_csv, parse_scenario, run_sweep

__all__ = [
    "QFeedbackError",
    "ProcessingResult",
    "SweepProcessor",
    "DensityMatrix",
    "Effect",
    "Observable",
    "Povm",
    "EstimateMap",
    "ozawa_uncertainty",
    "probe_output_feedback_joint",
    "probe_output_feedback_reduced",
    "probe_output_no_feedback",
    "weak_value_estimates",
    "ScenarioSpec",
    "builtin_scenarios",
    "emit_csv",
    "parse_scenario",
    "run_sweep",
]
