"""Validated quantum data model: states, observables, effects and POVMs"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np
import numpy.typing as npt

from ..config import TOLERANCES
from ..errors import (
    DimensionMismatch,
    DuplicateLabel,
    Incomplete,
    InvalidEffect,
    InvalidState,
    NotOrthonormal,
    NumericalInconsistency,
    ZeroVector,
)
from ..linalg import (
    ComplexMatrix,
    SpectralDecomposition,
    dagger,
    hermitian_eig,
    require_hermitian,
)

logger = logging.getLogger(__name__)

Label = Union[str, int]


def _frozen(m: ComplexMatrix) -> ComplexMatrix:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian operator on the system"""
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _frozen(require_hermitian(self.matrix, "observable")))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def spectrum(self) -> SpectralDecomposition:
        # Cached on first use; the matrix is immutable
        cached = self.__dict__.get("_spectrum")
        if cached is None:
            cached = hermitian_eig(self.matrix)
            object.__setattr__(self, "_spectrum", cached)
        return cached

    @property
    def spectral_range(self) -> Tuple[float, float]:
        lam = self.spectrum.eigenvalues
        return float(lam[0]), float(lam[-1])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite, unit-trace system state"""
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        m = require_hermitian(self.matrix, "density matrix")
        trace = float(np.real(np.trace(m)))
        if not abs(trace - 1.0) <= TOLERANCES.hermitian:
            raise InvalidState(f"density matrix trace is {trace:.12g}, expected 1")
        lam_min = float(hermitian_eig(m).eigenvalues[0])
        if not lam_min >= -TOLERANCES.hermitian:
            raise InvalidState(f"density matrix has negative eigenvalue {lam_min:.3e}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    @property
    def is_pure(self) -> bool:
        return abs(self.purity - 1.0) <= TOLERANCES.hermitian


@dataclass(frozen=True, eq=False)
class Effect:
    """Labeled POVM element with spectrum inside [0, 1]"""
    label: Label
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        m = require_hermitian(self.matrix, f"effect {self.label!r}")
        lam = hermitian_eig(m).eigenvalues
        tol = TOLERANCES.hermitian
        if not (lam[0] >= -tol and lam[-1] <= 1.0 + tol):
            raise InvalidEffect(
                f"effect {self.label!r} has eigenvalues in [{lam[0]:.6g}, {lam[-1]:.6g}], "
                f"outside [0, 1]"
            )
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class Povm:
    """Ordered list of effects summing to the identity.

    Effect order is preserved from the input so iteration, CSV output and
    random-number consumption are reproducible.
    """
    effects: Tuple[Effect, ...]
    _index: Dict[Label, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        effects = tuple(self.effects)
        if not effects:
            raise Incomplete("a POVM needs at least one effect")
        dim = effects[0].dim
        index: Dict[Label, int] = {}
        for i, e in enumerate(effects):
            if e.dim != dim:
                raise DimensionMismatch(
                    f"effect {e.label!r} has dimension {e.dim}, expected {dim}"
                )
            if e.label in index:
                raise DuplicateLabel(f"duplicate outcome label {e.label!r}")
            index[e.label] = i
        total = sum(e.matrix for e in effects)
        defect = float(np.max(np.abs(total - np.eye(dim))))
        if not defect <= TOLERANCES.hermitian:
            raise Incomplete(f"POVM incomplete: effects sum to identity only within {defect:.3e}")
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_matrices(cls, mapping: Mapping[Label, npt.ArrayLike]) -> "Povm":
        return cls(tuple(Effect(label, np.asarray(m)) for label, m in mapping.items()))

    @classmethod
    def trivial(cls, dim: int, label: Label = "I") -> "Povm":
        """The no-measurement POVM {I}"""
        return cls((Effect(label, np.eye(dim, dtype=np.complex128)),))

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    @property
    def labels(self) -> List[Label]:
        return [e.label for e in self.effects]

    def get(self, label: Label) -> Effect:
        return self.effects[self._index[label]]

    def __iter__(self) -> Iterator[Effect]:
        return iter(self.effects)

    def __len__(self) -> int:
        return len(self.effects)


def _check_dims(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionMismatch(f"dimensions do not match: {dims}")


def _real_trace(m: ComplexMatrix, what: str) -> float:
    value = complex(np.trace(m))
    if not abs(value.imag) <= TOLERANCES.unitary:
        raise NumericalInconsistency(f"{what} has imaginary part {value.imag:.3e}")
    return value.real


def expectation(a: Observable, rho: DensityMatrix) -> float:
    """Re Tr(A rho)"""
    _check_dims(a.dim, rho.dim)
    return _real_trace(a.matrix @ rho.matrix, "Tr(A rho)")


def variance(a: Observable, rho: DensityMatrix) -> float:
    """Tr(A^2 rho) - Tr(A rho)^2, clamped at zero"""
    _check_dims(a.dim, rho.dim)
    mean = expectation(a, rho)
    second = _real_trace(a.matrix @ a.matrix @ rho.matrix, "Tr(A^2 rho)")
    return max(second - mean * mean, 0.0)


def outcome_probability(e: Effect, rho: DensityMatrix) -> float:
    """Born rule Tr(E rho), clamped to [0, 1]"""
    _check_dims(e.dim, rho.dim)
    p = _real_trace(e.matrix @ rho.matrix, "Tr(E rho)")
    return min(max(p, 0.0), 1.0)


def pure_state(vector: npt.ArrayLike) -> DensityMatrix:
    """|psi><psi| for the normalized vector"""
    psi = np.asarray(vector, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if psi.size == 0 or norm == 0.0:
        raise ZeroVector("cannot build a pure state from the zero vector")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(np.eye(dim, dtype=np.complex128) / dim)


def projective_povm_from_basis(
    basis: Sequence[npt.ArrayLike],
    labels: Optional[Sequence[Label]] = None,
) -> Povm:
    """Rank-1 projectors |m><m| onto an orthonormal basis"""
    vectors = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in basis]
    if not vectors:
        raise Incomplete("empty basis")
    dim = vectors[0].size
    for v in vectors:
        if v.size != dim:
            raise DimensionMismatch(f"basis vector of length {v.size}, expected {dim}")
    if labels is None:
        labels = list(range(len(vectors)))
    elif len(labels) != len(vectors):
        raise DimensionMismatch(f"{len(labels)} labels for {len(vectors)} basis vectors")

    frame = np.column_stack(vectors)
    gram = dagger(frame) @ frame
    defect = float(np.max(np.abs(gram - np.eye(len(vectors)))))
    if not defect <= TOLERANCES.hermitian:
        raise NotOrthonormal(f"basis vectors are not orthonormal (max Gram defect {defect:.3e})")
    if len(vectors) != dim:
        raise Incomplete(f"{len(vectors)} orthonormal vectors cannot span dimension {dim}")

    return Povm(tuple(Effect(label, np.outer(v, v.conj())) for label, v in zip(labels, vectors)))
