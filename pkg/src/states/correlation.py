#!/usr/bin/env python3
"""
Correlation tensors T_{i_1...i_n} = Tr(rho H_{i_1} x ... x H_{i_n}) over a local operator basis.

Index 0 is the identity element H_0 = sqrt(c/d) * 1, indices 1..r the traceless generators.
Entries follow the plain trace convention (no rescaling to [-1, 1]).
"""

import logging
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from src.errors import DimensionMismatchError, UnsupportedRestrictionError
from src.hamiltonians.bases import LocalBasis
from .models import DensityMatrix, PureState

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-10
DENSE_MAX_SITES = 4


class CorrelationTensor:
    """Lazily evaluated correlation tensor of a state"""

    def __init__(self, state: Union[PureState, DensityMatrix], basis: LocalBasis):
        if state.d != basis.d:
            raise DimensionMismatchError(
                f"Basis '{basis.name}' acts on d={basis.d}, state has d={state.d}"
            )
        self.state = state
        self.basis = basis
        self.n = state.n
        self.d = state.d
        self._operators = basis.operators()
        self._reduced: Dict[Tuple[int, ...], np.ndarray] = {}

    def _reduced_matrix(self, sites: Tuple[int, ...]) -> np.ndarray:
        if sites not in self._reduced:
            self._reduced[sites] = self.state.reduced(sites).matrix
        return self._reduced[sites]

    def entry(self, indices: Sequence[int]) -> float:
        """T at a full index tuple (one index per site)"""
        if len(indices) != self.n:
            raise DimensionMismatchError(f"Expected {self.n} indices, got {len(indices)}")
        support = tuple(s for s, i in enumerate(indices) if i != 0)
        identity_factor = self.basis.h0 ** (self.n - len(support))
        if not support:
            return float(identity_factor)

        local = self._operators[indices[support[0]]]
        for s in support[1:]:
            local = np.kron(local, self._operators[indices[s]])
        value = np.trace(self._reduced_matrix(support) @ local) * identity_factor
        if abs(value.imag) > IMAG_TOL:
            logger.warning(f"Correlation entry {tuple(indices)} has imaginary part {value.imag:.3e}")
        return float(value.real)

    def bloch(self, site: int, index: int) -> float:
        """Weight-1 entry with generator `index` at `site` and H_0 elsewhere"""
        indices = [0] * self.n
        indices[site] = index
        return self.entry(indices)

    def pair(self, site_a: int, site_b: int, index_a: int, index_b: int) -> float:
        """Weight-2 entry with generators at two distinct sites"""
        if site_a == site_b:
            raise DimensionMismatchError("Pair entries need two distinct sites")
        indices = [0] * self.n
        indices[site_a] = index_a
        indices[site_b] = index_b
        return self.entry(indices)

    def local_expectation(self, site: int, index: int) -> float:
        """<H_index> on one site, i.e. the Bloch entry with the H_0 factors divided out"""
        return self.bloch(site, index) / self.basis.h0 ** (self.n - 1)

    def pair_expectation(self, site_a: int, site_b: int, index_a: int, index_b: int) -> float:
        return self.pair(site_a, site_b, index_a, index_b) / self.basis.h0 ** (self.n - 2)

    def dense(self) -> np.ndarray:
        """All (r+1)^n entries; restricted to n <= 4"""
        if self.n > DENSE_MAX_SITES:
            raise UnsupportedRestrictionError(
                f"Dense correlation tensors are limited to n <= {DENSE_MAX_SITES}, got n={self.n}"
            )
        n, d = self.n, self.d
        rho = self.state.density_matrix().matrix if isinstance(self.state, PureState) else self.state.matrix
        tensor = rho.reshape([d] * (2 * n))
        for s in range(n):
            remaining = n - s
            # axes: (k_0..k_{s-1}, rows_s.., cols_s..); contract row s with op column, col s with op row
            tensor = np.tensordot(tensor, self._operators, axes=([s, s + remaining], [2, 1]))
            tensor = np.moveaxis(tensor, -1, s)

        if np.max(np.abs(tensor.imag), initial=0.0) > IMAG_TOL:
            logger.warning("Dense correlation tensor carries a non-negligible imaginary part")
        return tensor.real

    def reconstruct(self) -> np.ndarray:
        """rho = sum_I T_I H_I / c^n, valid when the basis spans all d x d matrices"""
        r = self._operators.shape[0]
        if r != self.d * self.d:
            raise UnsupportedRestrictionError(
                f"Basis '{self.basis.name}' has {r} elements including H_0, "
                f"reconstruction needs {self.d * self.d}"
            )
        tensor = self.dense().astype(complex)
        for _ in range(self.n):
            tensor = np.tensordot(tensor, self._operators, axes=([0], [0]))
        # axes now (a_0, b_0, a_1, b_1, ...): rows then columns
        order = list(range(0, 2 * self.n, 2)) + list(range(1, 2 * self.n, 2))
        dim = self.d ** self.n
        return np.transpose(tensor, order).reshape(dim, dim) / self.basis.c ** self.n


def correlation_tensor(state: Union[PureState, DensityMatrix], basis: LocalBasis) -> CorrelationTensor:
    return CorrelationTensor(state, basis)
