"""Seeded random states, observables and POVMs for presets and tests"""

from typing import Optional, Sequence

import numpy as np
from scipy.stats import ortho_group, unitary_group

from ..linalg import ComplexMatrix, dagger, hermitian_eig, hermitian_part
from .states import DensityMatrix, Effect, Label, Observable, Povm, pure_state


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**32))


def random_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-random unitary"""
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1), dtype=np.complex128)
    return np.asarray(unitary_group.rvs(dim, random_state=_seed(rng)), dtype=np.complex128)


def _ginibre(rows: int, cols: int, rng: np.random.Generator) -> ComplexMatrix:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_pure_state(dim: int, rng: np.random.Generator) -> DensityMatrix:
    return pure_state(_ginibre(dim, 1, rng)[:, 0])


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: Optional[int] = None
) -> DensityMatrix:
    """Mixed state G G† / Tr(G G†) with G of shape (dim, rank)"""
    g = _ginibre(dim, rank or dim, rng)
    m = g @ dagger(g)
    return DensityMatrix(hermitian_part(m / np.trace(m).real))


def random_observable(dim: int, rng: np.random.Generator, scale: float = 1.0) -> Observable:
    """Random Hermitian matrix with spectral norm equal to scale"""
    g = _ginibre(dim, dim, rng)
    h = hermitian_part(g)
    norm = float(np.max(np.abs(hermitian_eig(h).eigenvalues)))
    return Observable(h * (scale / norm if norm > 0 else 1.0))


def random_povm(
    dim: int,
    n_effects: int,
    rng: np.random.Generator,
    labels: Optional[Sequence[Label]] = None,
) -> Povm:
    """E_k = S^{-1/2} G_k S^{-1/2} with random positive G_k and S = sum G_k"""
    if labels is None:
        labels = [f"m{k}" for k in range(n_effects)]
    grams = []
    for _ in range(n_effects):
        g = _ginibre(dim, dim, rng)
        grams.append(g @ dagger(g))
    inv_sqrt = hermitian_eig(sum(grams)).apply(lambda lam: 1.0 / np.sqrt(lam))
    return Povm(
        tuple(
            Effect(label, hermitian_part(inv_sqrt @ g @ inv_sqrt))
            for label, g in zip(labels, grams)
        )
    )


def random_basis(
    dim: int, rng: np.random.Generator, real: bool = False
) -> Sequence[np.ndarray]:
    """Columns of a random orthogonal (real=True) or unitary matrix"""
    if real and dim == 1:
        u = np.ones((1, 1), dtype=np.complex128)
    elif real:
        u = np.asarray(ortho_group.rvs(dim, random_state=_seed(rng)), dtype=np.complex128)
    else:
        u = random_unitary(dim, rng)
    return [u[:, k] for k in range(dim)]
