"""Pauli operators and standard qubit bases"""

from typing import List

import numpy as np

from ..linalg import ComplexMatrix

IDENTITY_2: ComplexMatrix = np.eye(2, dtype=np.complex128)
PAULI_X: ComplexMatrix = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y: ComplexMatrix = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z: ComplexMatrix = np.array([[1, 0], [0, -1]], dtype=np.complex128)

for _m in (IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


def ket(*amplitudes: complex) -> np.ndarray:
    return np.array(amplitudes, dtype=np.complex128)


def z_basis() -> List[np.ndarray]:
    """|0>, |1>"""
    return [ket(1, 0), ket(0, 1)]


def x_basis() -> List[np.ndarray]:
    """|+>, |->"""
    s = 1.0 / np.sqrt(2.0)
    return [ket(s, s), ket(s, -s)]


def theta_state(theta: float) -> np.ndarray:
    """cos(theta)|0> + sin(theta)|1>"""
    return ket(np.cos(theta), np.sin(theta))
