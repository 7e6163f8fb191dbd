"""Scenario documents: JSON schema, validation and the ScenarioSpec value type.

Complex numbers are always two-element [re, im] lists. A pure state may be
given as a vector, which is normalized on load; POVM effects given as
vectors are rank-1 projectors, and a POVM made only of vectors goes through
the orthonormal-basis check.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union
import json
import logging
import math

import numpy as np
import pydantic
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, StrictInt, StrictStr, model_validator

from ..config import DEFAULT_SIGMA_POINTS, DEFAULT_SIGMA_START, DEFAULT_SIGMA_STOP
from ..errors import Incomplete, InvalidEstimate, LabelMismatch, ParseError, QFeedbackError, ValidationError
from ..model import (
    DensityMatrix,
    Effect,
    Label,
    Observable,
    Povm,
    projective_povm_from_basis,
    pure_state,
)
from ..protocol import EstimateMap, EstimateStrategy, strategy_estimates

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Domain value types
# ---------------------------------------------------------------------------

class Spacing(Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class SigmaSweep:
    start: float = DEFAULT_SIGMA_START
    stop: float = DEFAULT_SIGMA_STOP
    points: int = DEFAULT_SIGMA_POINTS
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self) -> None:
        if self.points < 1:
            raise ValidationError(f"sigma sweep needs at least one point, got {self.points}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("sigma sweep bounds must be finite")
        if self.spacing is Spacing.LOG and (self.start <= 0 or self.stop <= 0):
            raise ValidationError("log sigma spacing needs start and stop > 0")

    def values(self) -> List[float]:
        if self.points == 1:
            return [float(self.start)]
        if self.spacing is Spacing.LOG:
            grid = np.geomspace(self.start, self.stop, self.points)
        else:
            grid = np.linspace(self.start, self.stop, self.points)
        return [float(s) for s in grid]


@dataclass(frozen=True)
class MonteCarloSettings:
    shots: int
    seed: int

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValidationError(f"Monte Carlo needs at least one shot, got {self.shots}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class ScenarioSpec:
    """Validated experiment description: state, observable, measurement,
    estimate strategy, sigma sweep and optional Monte Carlo settings"""
    name: str
    state: DensityMatrix
    observable: Observable
    povm: Povm
    strategy: EstimateStrategy
    sweep: SigmaSweep = field(default_factory=SigmaSweep)
    monte_carlo: Optional[MonteCarloSettings] = None
    custom_estimates: Optional[EstimateMap] = None
    estimates: EstimateMap = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dims = {self.state.dim, self.observable.dim, self.povm.dim}
        if len(dims) != 1:
            raise ValidationError(
                f"dimension mismatch: state {self.state.dim}, observable {self.observable.dim}, "
                f"POVM {self.povm.dim}"
            )
        est = strategy_estimates(
            self.strategy, self.state, self.observable, self.povm, self.custom_estimates
        )
        object.__setattr__(self, "estimates", est)

    @property
    def dimension(self) -> int:
        return self.state.dim

    def with_overrides(
        self,
        sweep: Optional[SigmaSweep] = None,
        strategy: Optional[EstimateStrategy] = None,
        monte_carlo: Optional[MonteCarloSettings] = None,
    ) -> "ScenarioSpec":
        """Copy with CLI overrides applied; validation runs again"""
        return replace(
            self,
            sweep=sweep or self.sweep,
            strategy=strategy or self.strategy,
            monte_carlo=monte_carlo or self.monte_carlo,
        )


# ---------------------------------------------------------------------------
# Document schema
# ---------------------------------------------------------------------------

def _reject_strings(value: Any) -> Any:
    if isinstance(value, str):
        raise ValueError("numbers must be JSON numbers, not strings")
    return value


Real = Annotated[float, BeforeValidator(_reject_strings)]
ComplexEntry = Tuple[Real, Real]
VectorDoc = List[ComplexEntry]
MatrixDoc = List[List[ComplexEntry]]
LabelDoc = Union[StrictInt, StrictStr]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class StateDoc(_Model):
    vector: Optional[VectorDoc] = None
    matrix: Optional[MatrixDoc] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "StateDoc":
        if (self.vector is None) == (self.matrix is None):
            raise ValueError("state needs exactly one of 'vector' or 'matrix'")
        return self


class EffectDoc(_Model):
    label: LabelDoc
    vector: Optional[VectorDoc] = None
    matrix: Optional[MatrixDoc] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "EffectDoc":
        if (self.vector is None) == (self.matrix is None):
            raise ValueError("effect needs exactly one of 'vector' or 'matrix'")
        return self


class EstimateValueDoc(_Model):
    label: LabelDoc
    value: Real


class EstimatesDoc(_Model):
    strategy: Literal["zero", "mean", "eigenvalue", "weak-value", "custom"]
    values: Optional[List[EstimateValueDoc]] = None


class SigmaDoc(_Model):
    start: Real = DEFAULT_SIGMA_START
    stop: Real = DEFAULT_SIGMA_STOP
    points: StrictInt = Field(DEFAULT_SIGMA_POINTS, ge=1)
    spacing: Literal["linear", "log"] = "linear"


class MonteCarloDoc(_Model):
    shots: StrictInt = Field(ge=1)
    seed: StrictInt = Field(ge=0, lt=2**64)


class ScenarioDocument(_Model):
    name: StrictStr
    dimension: StrictInt = Field(ge=1)
    state: StateDoc
    observable: MatrixDoc
    povm: List[EffectDoc] = Field(min_length=1)
    estimates: EstimatesDoc
    sigma: SigmaDoc = Field(default_factory=SigmaDoc)
    monte_carlo: Optional[MonteCarloDoc] = None


# ---------------------------------------------------------------------------
# Conversion
# ---------------------------------------------------------------------------

def _vector(entries: VectorDoc, dim: int, what: str) -> np.ndarray:
    if len(entries) != dim:
        raise ValidationError(f"{what}: expected {dim} entries, got {len(entries)}")
    return np.array([complex(re, im) for re, im in entries], dtype=np.complex128)


def _matrix(rows: MatrixDoc, dim: int, what: str) -> np.ndarray:
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise ValidationError(f"{what}: expected a {dim}x{dim} matrix")
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def _build_povm(effects: List[EffectDoc], dim: int) -> Povm:
    labels: List[Label] = [e.label for e in effects]
    if all(e.vector is not None for e in effects):
        vectors = [_vector(e.vector, dim, f"POVM vector {e.label!r}") for e in effects]  # type: ignore[arg-type]
        return projective_povm_from_basis(vectors, labels)
    built = []
    for e in effects:
        if e.vector is not None:
            v = _vector(e.vector, dim, f"POVM vector {e.label!r}")
            m = np.outer(v, v.conj())
        else:
            m = _matrix(e.matrix, dim, f"POVM effect {e.label!r}")  # type: ignore[arg-type]
        built.append(Effect(e.label, m))
    return Povm(tuple(built))


def _to_spec(doc: ScenarioDocument) -> ScenarioSpec:
    dim = doc.dimension

    try:
        if doc.state.vector is not None:
            state = pure_state(_vector(doc.state.vector, dim, "state vector"))
        else:
            state = DensityMatrix(_matrix(doc.state.matrix, dim, "state matrix"))  # type: ignore[arg-type]
    except ValidationError:
        raise
    except ValueError as e:
        raise ValidationError(f"invalid state: {e}") from e

    try:
        observable = Observable(_matrix(doc.observable, dim, "observable"))
    except ValidationError:
        raise
    except ValueError as e:
        raise ValidationError(f"invalid observable: {e}") from e

    try:
        povm = _build_povm(doc.povm, dim)
    except ValidationError:
        raise
    except Incomplete as e:
        message = str(e)
        raise ValidationError(message if message.startswith("POVM incomplete") else f"POVM incomplete: {message}") from e
    except ValueError as e:
        raise ValidationError(f"invalid POVM: {e}") from e

    strategy = EstimateStrategy(doc.estimates.strategy)
    custom: Optional[EstimateMap] = None
    if doc.estimates.values is not None:
        if strategy is not EstimateStrategy.CUSTOM:
            raise ValidationError(f"estimate values are only allowed with the custom strategy, not {strategy.value}")
        labels = [v.label for v in doc.estimates.values]
        if len(set(labels)) != len(labels):
            raise ValidationError("label mismatch: duplicate labels in custom estimates")
        try:
            custom = EstimateMap({v.label: v.value for v in doc.estimates.values})
        except InvalidEstimate as e:
            raise ValidationError(f"invalid custom estimates: {e}") from e

    sweep = SigmaSweep(doc.sigma.start, doc.sigma.stop, doc.sigma.points, Spacing(doc.sigma.spacing))
    mc = MonteCarloSettings(doc.monte_carlo.shots, doc.monte_carlo.seed) if doc.monte_carlo else None

    try:
        return ScenarioSpec(
            name=doc.name,
            state=state,
            observable=observable,
            povm=povm,
            strategy=strategy,
            sweep=sweep,
            monte_carlo=mc,
            custom_estimates=custom,
        )
    except LabelMismatch as e:
        raise ValidationError(str(e)) from e
    except ValidationError:
        raise
    except QFeedbackError as e:
        raise ValidationError(str(e)) from e


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse and fully validate a scenario document"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e

    try:
        doc = ScenarioDocument.model_validate(data)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<document>"
        raise ParseError(f"field '{location}': {first['msg']} ({e.error_count()} error(s))") from e

    spec = _to_spec(doc)
    logger.debug(f"Parsed scenario {spec.name!r} (dimension {spec.dimension}, {len(spec.povm)} outcomes)")
    return spec


def load_scenario(path: Path) -> ScenarioSpec:
    """Read and parse a scenario file"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})") from e
    except OSError as e:
        raise ParseError(f"{path}: cannot read file ({e.strerror})") from e
    return parse_scenario(text)
