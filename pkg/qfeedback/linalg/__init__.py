"""Dense complex linear algebra"""

from .core import (
    ComplexMatrix,
    SpectralDecomposition,
    as_complex_matrix,
    dagger,
    hermitian_eig,
    hermitian_part,
    is_hermitian,
    partial_trace_system,
    require_hermitian,
    tensor,
    unitary_exp_i,
)

__all__ = [
    "ComplexMatrix",
    "SpectralDecomposition",
    "as_complex_matrix",
    "dagger",
    "hermitian_eig",
    "hermitian_part",
    "is_hermitian",
    "partial_trace_system",
    "require_hermitian",
    "tensor",
    "unitary_exp_i",
]
