#!/usr/bin/env python3
"""
Exact quantum Fisher information, skew information and the Fisher matrix diagonal
"""

import logging
import math
from typing import Optional, Sequence, Union

import numpy as np

from config.settings import get_settings
from src.errors import DimensionMismatchError, DomainError
from src.hamiltonians import EmbeddedHamiltonian, LocalBasis, collective_generators, single_site_generators
from src.linalg import hermitian_eig, psd_sqrt
from src.states import DensityMatrix, PureState, as_density_matrix

logger = logging.getLogger(__name__)

State = Union[PureState, DensityMatrix]
Operator = Union[EmbeddedHamiltonian, np.ndarray]


def _matrix(h: Operator) -> np.ndarray:
    return h.matrix if isinstance(h, EmbeddedHamiltonian) else np.asarray(h, dtype=complex)


class QfiKernel:
    """Eigendecomposition of rho and the pair weights f_ml = 2 (l_m - l_l)^2 / (l_m + l_l).

    F_Q(rho, H) = sum_ml f_ml |<m|H|l>|^2, pairs with l_m + l_l below the cutoff dropped.
    Decomposing once lets many generators share the same rho.
    """

    def __init__(self, rho: State, cutoff: Optional[float] = None):
        rho = as_density_matrix(rho)
        self.dim = rho.dim
        cutoff = cutoff if cutoff is not None else get_settings().eig_pair_cutoff

        eig = hermitian_eig(rho.matrix)
        lam = np.clip(eig.eigenvalues, 0.0, None)
        self.eigenvalues = lam
        self.eigenvectors = eig.eigenvectors

        total = lam[:, None] + lam[None, :]
        diff = lam[:, None] - lam[None, :]
        mask = total > cutoff
        self.weights = np.zeros_like(total)
        self.weights[mask] = 2.0 * diff[mask] ** 2 / total[mask]

    def transform(self, h: Operator) -> np.ndarray:
        """V^dagger H V"""
        h = _matrix(h)
        if h.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Operator of shape {h.shape} does not act on dimension {self.dim}")
        v = self.eigenvectors
        return v.conj().T @ h @ v

    def qfi_transformed(self, transformed: np.ndarray) -> float:
        return float(np.sum(self.weights * np.abs(transformed) ** 2))

    def qfi(self, h: Operator) -> float:
        return self.qfi_transformed(self.transform(h))


def qfi_general(rho: State, h: Operator) -> float:
    """F_Q from the spectral decomposition of rho"""
    return QfiKernel(rho).qfi(h)


def qfi_pure(psi: PureState, h: Operator) -> float:
    """4 (<H^2> - <H>^2)"""
    return 4.0 * psi.variance(_matrix(h))


def qfi_values(state: State, operators: Sequence[np.ndarray]) -> np.ndarray:
    """F_Q for several generators; variance form for pure states, one eigendecomposition otherwise"""
    if isinstance(state, PureState):
        return np.array([4.0 * state.variance(op) for op in operators])
    kernel = QfiKernel(state)
    return np.array([kernel.qfi(op) for op in operators])


def skew_information(rho: State, h: Operator) -> float:
    """-Tr([sqrt(rho), H]^2)"""
    rho = as_density_matrix(rho)
    h = _matrix(h)
    if h.shape != (rho.dim, rho.dim):
        raise DimensionMismatchError(f"Operator of shape {h.shape} does not act on dimension {rho.dim}")
    root = psd_sqrt(rho.matrix, tol=get_settings().psd_tol)
    commutator = root @ h - h @ root
    value = -float(np.trace(commutator @ commutator).real)
    return max(value, 0.0)


def fisher_matrix_diag(state: State, basis: LocalBasis, mode: str = "collective") -> np.ndarray:
    """Diagonal of the Fisher matrix in the directions of the basis generators.

    collective:    F_Q(rho, sum_s H_i^{(s)}) for i = 1..r
    noncollective: F_Q(rho, H_i^{(s)}) for every (s, i), site-major, length n * r
    """
    if state.d != basis.d:
        raise DimensionMismatchError(f"Basis '{basis.name}' acts on d={basis.d}, state has d={state.d}")
    if mode == "collective":
        operators = collective_generators(basis, state.n)
    elif mode == "noncollective":
        operators = single_site_generators(basis, state.n)
    else:
        raise DomainError(f"Unknown mode '{mode}', expected collective or noncollective")
    return qfi_values(state, operators)


def estimation_bound(mean_qfi: float) -> float:
    """Lower bound 1 / sqrt(F) on the precision of estimating t"""
    if mean_qfi <= 0:
        raise DomainError(f"Estimation bound needs a positive mean QFI, got {mean_qfi}")
    return 1.0 / math.sqrt(mean_qfi)
