"""Numerical tolerances and processing defaults"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by every module.

    Inputs are validated once at construction with `hermitian`; downstream
    code treats them as exact.
    """
    hermitian: float = 1e-9
    unitary: float = 1e-10
    eig_offdiag: float = 1e-12
    eig_max_sweeps: int = 100
    probability_floor: float = 1e-12
    cross_check: float = 1e-9
    anomalous_margin: float = 1e-9


TOLERANCES = Tolerances()

# Default sigma sweep when a document or preset does not give one
DEFAULT_SIGMA_START = 0.0
DEFAULT_SIGMA_STOP = 1.0
DEFAULT_SIGMA_POINTS = 11

DEFAULT_WORKERS = 1

# Shots per independently seeded Monte Carlo block
MC_BLOCK_SIZE = 65536

# Significant digits in emitted CSV
CSV_DIGITS = 12
