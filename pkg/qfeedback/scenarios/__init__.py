"""Scenario documents, presets, sigma sweeps and CSV output"""

from .csv_writer import COLUMNS, OUTCOME_COLUMNS, emit_csv, format_number, read_columns
from .parser import (
    MonteCarloSettings,
    ScenarioDocument,
    ScenarioSpec,
    SigmaSweep,
    Spacing,
    load_scenario,
    parse_scenario,
)
from .presets import (
    DEFAULT_THETA,
    PRESET_DESCRIPTIONS,
    PRESET_DIR,
    PRESET_FILES,
    builtin_scenarios,
    get_preset,
    load_preset_file,
    preset_path,
)
from .sweep import ResultRow, SweepHeader, SweepResult, analyze, evaluate_point, point_seed, run_sweep

__all__ = [
    "COLUMNS",
    "OUTCOME_COLUMNS",
    "emit_csv",
    "format_number",
    "read_columns",
    "MonteCarloSettings",
    "ScenarioDocument",
    "ScenarioSpec",
    "SigmaSweep",
    "Spacing",
    "load_scenario",
    "parse_scenario",
    "DEFAULT_THETA",
    "PRESET_DESCRIPTIONS",
    "PRESET_DIR",
    "PRESET_FILES",
    "builtin_scenarios",
    "get_preset",
    "load_preset_file",
    "preset_path",
    "ResultRow",
    "SweepHeader",
    "SweepResult",
    "analyze",
    "evaluate_point",
    "point_seed",
    "run_sweep",
]
