"""Dense complex linear algebra for small Hilbert spaces.

Joint system-probe operators use the system-major index convention
k = s * 2 + p: the probe index varies fastest, which is exactly what
`numpy.kron(system, probe)` produces.
"""

from dataclasses import dataclass
from typing import Callable
import logging

import numpy as np
import numpy.typing as npt

from ..config import TOLERANCES
from ..errors import DimensionMismatch, NoConvergence, NonFinite, NotHermitian

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

PROBE_DIM = 2


def as_complex_matrix(m: npt.ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """Coerce to a square complex128 array, rejecting anything else"""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise NonFinite(f"{name} has NaN or infinite entries")
    return arr


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return m.conj().T


def hermiticity_defect(m: ComplexMatrix) -> float:
    """max |m - m†| entrywise"""
    return float(np.max(np.abs(m - dagger(m))))


def is_hermitian(m: ComplexMatrix, tol: float = TOLERANCES.hermitian) -> bool:
    return hermiticity_defect(m) <= tol


def hermitian_part(m: ComplexMatrix) -> ComplexMatrix:
    return 0.5 * (m + dagger(m))


def require_hermitian(m: npt.ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """Validate hermiticity and return the exactly Hermitian part"""
    arr = as_complex_matrix(m, name)
    defect = hermiticity_defect(arr)
    if not defect <= TOLERANCES.hermitian:
        raise NotHermitian(f"{name} is not Hermitian (max |h - h†| = {defect:.3e})")
    return hermitian_part(arr)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) with orthonormal eigenvectors as columns"""
    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def apply(self, f: Callable[[RealVector], npt.NDArray[np.generic]]) -> ComplexMatrix:
        """V f(Λ) V† for an elementwise function f"""
        v = self.eigenvectors
        return (v * f(self.eigenvalues)) @ dagger(v)

    def reconstruct(self) -> ComplexMatrix:
        return self.apply(lambda lam: lam)

    def exp_i(self, s: float, shift: float = 0.0) -> ComplexMatrix:
        """exp(i s (H - shift)) without another diagonalization"""
        return self.apply(lambda lam: np.exp(1j * s * (lam - shift)))


def tensor(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """Kronecker product, first factor major"""
    return np.kron(as_complex_matrix(a, "a"), as_complex_matrix(b, "b"))


def _offdiag_norm(a: ComplexMatrix) -> float:
    return float(np.sqrt(max(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2), 0.0)))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    """Annihilate a[p, q] in place with a complex Jacobi rotation.

    The phase of a[p, q] is removed first so the remaining 2x2 problem is
    real symmetric; the rotation G acts on columns p, q and A <- G† A G.
    """
    apq = a[p, q]
    g = abs(apq)
    if g == 0.0:
        return
    phase = apq / g
    alpha = a[p, p].real
    beta = a[q, q].real
    theta = (beta - alpha) / (2.0 * g)
    if abs(theta) > 1e150:
        t = 1.0 / (2.0 * theta)
    else:
        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0.0 else 1.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)

    idx = [p, q]
    a[:, idx] = a[:, idx] @ rot
    a[idx, :] = dagger(rot) @ a[idx, :]
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ rot


def hermitian_eig(h: npt.ArrayLike) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Converges when the off-diagonal Frobenius norm drops below
    eig_offdiag * max(1, ||h||_F). The bound is relative to the input
    norm and reduces to the absolute 1e-12 for ||h||_F <= 1. Raises
    NoConvergence after eig_max_sweeps full sweeps.
    """
    a = require_hermitian(h, "h").copy()
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    threshold = TOLERANCES.eig_offdiag * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while not _offdiag_norm(a) <= threshold:
        if sweeps >= TOLERANCES.eig_max_sweeps:
            raise NoConvergence(
                f"Jacobi iteration did not converge in {TOLERANCES.eig_max_sweeps} sweeps "
                f"(off-diagonal norm {_offdiag_norm(a):.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
        sweeps += 1
    logger.debug(f"Jacobi converged in {sweeps} sweeps for dim {n}")

    eigenvalues = np.real(np.diag(a)).astype(np.float64)
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomposition(eigenvalues[order], v[:, order])


def unitary_exp_i(h: npt.ArrayLike, s: float) -> ComplexMatrix:
    """exp(i s h) for Hermitian h, computed spectrally"""
    return hermitian_eig(h).exp_i(s)


def partial_trace_system(joint: npt.ArrayLike, d_system: int) -> ComplexMatrix:
    """Trace out the system factor of a (d_system * 2)-dimensional operator"""
    m = as_complex_matrix(joint, "joint")
    if d_system < 1 or m.shape[0] != d_system * PROBE_DIM:
        raise DimensionMismatch(
            f"joint dimension {m.shape[0]} is not {PROBE_DIM} x system dimension {d_system}"
        )
    blocks = m.reshape(d_system, PROBE_DIM, d_system, PROBE_DIM)
    return np.einsum("ipiq->pq", blocks)
