"""
Dense Hermitian linear algebra
"""

from .eigensolvers import (
    BaseEigensolver,
    Eigendecomposition,
    EigensolverFactory,
    JacobiEigensolver,
    LapackEigensolver,
    get_eigensolver,
    hermitian_eig,
    set_eigensolver,
)
from .operations import (
    apply_local,
    exp_hermitian,
    haar_unitary,
    is_hermitian,
    is_psd,
    is_unitary,
    partial_trace,
    psd_sqrt,
    tensor_product,
    tensor_product_all,
)

__all__ = [
    "BaseEigensolver",
    "Eigendecomposition",
    "EigensolverFactory",
    "JacobiEigensolver",
    "LapackEigensolver",
    "get_eigensolver",
    "set_eigensolver",
    "hermitian_eig",
    "apply_local",
    "exp_hermitian",
    "haar_unitary",
    "is_hermitian",
    "is_psd",
    "is_unitary",
    "partial_trace",
    "psd_sqrt",
    "tensor_product",
    "tensor_product_all",
]
