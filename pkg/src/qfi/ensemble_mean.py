#!/usr/bin/env python3
"""
Ensemble-averaged QFI in closed form.

For coefficient vectors with E[alpha_i alpha_j] = sigma^2 delta_ij the QFI, being a
quadratic form in the Hamiltonian, averages to sigma^2 times the sum over generator
directions. With sigma^2 = mean_purity / (r c) this gives

    collective:    (mean_purity / c) (1/r) sum_i F_Q(rho, sum_s H_i^{(s)})
    noncollective: (mean_purity / c) (1/r) sum_s sum_i F_Q(rho, H_i^{(s)})

For pure states both sums reduce to local Bloch vectors and two-site correlations.
"""

import logging
from typing import Optional, Union

import numpy as np

from src.errors import DimensionMismatchError, DomainError, UnsupportedRestrictionError
from src.hamiltonians import HamiltonianEnsemble, LocalBasis
from src.linalg import tensor_product_all
from src.states import DensityMatrix, PureState, as_pure_state, correlation_tensor
from .fisher import fisher_matrix_diag, qfi_values
from .models import Provenance, QfiSummary

logger = logging.getLogger(__name__)

State = Union[PureState, DensityMatrix]


def _prefactor(ensemble: HamiltonianEnsemble) -> float:
    return ensemble.mean_purity() / ensemble.c


def _checked_basis(state: State, ensemble: HamiltonianEnsemble) -> LocalBasis:
    basis = ensemble.sampling_basis
    if state.d != basis.d:
        raise DimensionMismatchError(
            f"Ensemble '{ensemble.name}' acts on d={basis.d}, state has d={state.d}"
        )
    return basis


def mean_qfi_collective(state: State, ensemble: HamiltonianEnsemble) -> float:
    _checked_basis(state, ensemble)
    values = fisher_matrix_diag(state, ensemble.sampling_basis, "collective")
    return float(_prefactor(ensemble) * np.mean(values))


def mean_qfi_noncollective(state: State, ensemble: HamiltonianEnsemble) -> float:
    """Single-site generators with bare identity on the remaining sites"""
    basis = _checked_basis(state, ensemble)
    values = fisher_matrix_diag(state, basis, "noncollective")
    return float(_prefactor(ensemble) * np.sum(values) / basis.r)


def mean_qfi_noncollective_literal(state: State, ensemble: HamiltonianEnsemble) -> float:
    """Non-collective mean QFI with H_0 factors on the idle sites and the compensating
    prefactor (Tr H_0 / c)^{2(n-1)}; equal to mean_qfi_noncollective"""
    basis = _checked_basis(state, ensemble)
    n, d = state.n, basis.d
    h0 = basis.identity_element()
    operators = []
    for s in range(n):
        for g in basis.generators:
            operators.append(tensor_product_all([g if site == s else h0 for site in range(n)]))
    compensation = (np.trace(h0).real / basis.c) ** (2 * (n - 1))
    total = compensation * np.sum(qfi_values(state, operators))
    return float(_prefactor(ensemble) * total / basis.r)


def _require_pure(state: State) -> PureState:
    psi = as_pure_state(state)
    if psi is None:
        raise DomainError("Tensor forms of the mean QFI need a pure input state")
    return psi


def _constant_term(basis: LocalBasis, n: int) -> float:
    """4 n r c / d, the contribution of sum_i <H_i^2> on every site"""
    return 4.0 * n * basis.r * basis.c / basis.d


def mean_qfi_pure_tensor_collective(state: State, ensemble: HamiltonianEnsemble) -> float:
    """Collective mean QFI from weight-1 and weight-2 correlation tensor entries"""
    psi = _require_pure(state)
    basis = _checked_basis(psi, ensemble)
    if not basis.square_sum_is_scalar():
        raise UnsupportedRestrictionError(
            f"Generators of '{basis.name}' do not square-sum to a multiple of the identity"
        )
    tensor = correlation_tensor(psi, basis)
    n = psi.n

    pair_term = 0.0
    bloch_term = 0.0
    for i in range(1, basis.r + 1):
        for s in range(n):
            for s2 in range(s + 1, n):
                pair_term += tensor.pair_expectation(s, s2, i, i)
        bloch_term += sum(tensor.local_expectation(s, i) for s in range(n)) ** 2

    total = _constant_term(basis, n) + 8.0 * pair_term - 4.0 * bloch_term
    return float(_prefactor(ensemble) * total / basis.r)


def mean_qfi_pure_tensor_noncollective(state: State, ensemble: HamiltonianEnsemble) -> float:
    """Non-collective mean QFI from local Bloch vectors only"""
    psi = _require_pure(state)
    basis = _checked_basis(psi, ensemble)
    if not basis.square_sum_is_scalar():
        raise UnsupportedRestrictionError(
            f"Generators of '{basis.name}' do not square-sum to a multiple of the identity"
        )
    tensor = correlation_tensor(psi, basis)
    n = psi.n
    bloch_term = sum(
        tensor.local_expectation(s, i) ** 2 for s in range(n) for i in range(1, basis.r + 1)
    )
    total = _constant_term(basis, n) - 4.0 * bloch_term
    return float(_prefactor(ensemble) * total / basis.r)


def mean_qfi_summary(state: State, ensemble: HamiltonianEnsemble, state_id: Optional[str] = None,
                     provenance: Provenance = Provenance.ANALYTIC) -> QfiSummary:
    """Both modes for one state, with Omega and t* attached"""
    if provenance == Provenance.TENSOR_FORM:
        collective = mean_qfi_pure_tensor_collective(state, ensemble)
        noncollective = mean_qfi_pure_tensor_noncollective(state, ensemble)
    elif provenance == Provenance.ANALYTIC:
        collective = mean_qfi_collective(state, ensemble)
        noncollective = mean_qfi_noncollective(state, ensemble)
    else:
        raise DomainError("Monte Carlo summaries are built by mc_mean_qfi_summary")

    return QfiSummary(
        state_id=state_id or state.label,
        basis_id=ensemble.basis.name,
        ensemble_id=ensemble.name,
        mean_qfi_collective=max(collective, 0.0),
        mean_qfi_noncollective=max(noncollective, 0.0),
        provenance=provenance,
    )
