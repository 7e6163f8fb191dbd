"""Small-sigma convergence diagnostics for the residual decoherence law"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..model import DensityMatrix, Observable, Povm
from .feedback import EstimateMap, probe_output_feedback_reduced
from .uncertainty import ozawa_uncertainty


@dataclass(frozen=True)
class ConvergenceReport:
    """r(sigma) = (1 - <X>) - 2 sigma^2 eps^2 along a decreasing sigma list.

    When the sigma^2 law dominates, r shrinks like sigma^4, so each ratio
    r(s_k) / r(s_k+1) approaches (s_k / s_k+1)^4 (16 for halving).
    """
    sigmas: Tuple[float, ...]
    residuals: Tuple[float, ...]
    ratios: Tuple[float, ...]
    expected_ratios: Tuple[float, ...]


def residual_convergence(
    rho: DensityMatrix,
    a: Observable,
    povm: Povm,
    est: EstimateMap,
    sigmas: Sequence[float] = (0.04, 0.02, 0.01),
) -> ConvergenceReport:
    eps2 = ozawa_uncertainty(rho, a, povm, est).epsilon_squared
    residuals: List[float] = []
    for sigma in sigmas:
        x = probe_output_feedback_reduced(rho, a, povm, est, sigma).x_expectation
        residuals.append((1.0 - x) - 2.0 * sigma * sigma * eps2)

    ratios = []
    expected = []
    for k in range(len(sigmas) - 1):
        nxt = residuals[k + 1]
        ratios.append(residuals[k] / nxt if nxt != 0.0 else float("nan"))
        expected.append((sigmas[k] / sigmas[k + 1]) ** 4)
    return ConvergenceReport(tuple(sigmas), tuple(residuals), tuple(ratios), tuple(expected))
