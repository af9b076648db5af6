#!/usr/bin/env python3
"""
Monte Carlo oracle for the ensemble-averaged QFI
"""

import logging
from typing import Optional, Union

import numpy as np

from src.errors import DomainError
from src.hamiltonians import HamiltonianEnsemble, collective_generators, single_site_generators
from src.states import DensityMatrix, PureState
from src.utils import McEstimate, MonteCarloExecutor, counter_rng, summarize
from .fisher import QfiKernel
from .models import Provenance, QfiSummary

logger = logging.getLogger(__name__)

MIN_SAMPLES = 100

State = Union[PureState, DensityMatrix]


def draw_coefficients(ensemble: HamiltonianEnsemble, mode: str, n: int, seed: int, index: int) -> np.ndarray:
    """Coefficients of sample `index`: one vector (collective) or n vectors drawn in site order"""
    rng = counter_rng(seed, index)
    if mode == "collective":
        return ensemble.sample(rng)
    return np.concatenate([ensemble.sample(rng) for _ in range(n)])


def _qfi_chunk(start: int, stop: int, ensemble: HamiltonianEnsemble, mode: str, n: int, seed: int,
               transformed: np.ndarray, weights: np.ndarray) -> np.ndarray:
    values = np.empty(stop - start)
    for offset, index in enumerate(range(start, stop)):
        alpha = draw_coefficients(ensemble, mode, n, seed, index)
        h = np.tensordot(alpha, transformed, axes=1)
        values[offset] = np.sum(weights * np.abs(h) ** 2)
    return values


def mc_mean_qfi(state: State, ensemble: HamiltonianEnsemble, mode: str, samples: int, seed: int,
                executor: Optional[MonteCarloExecutor] = None) -> McEstimate:
    """Sample mean and standard error of F_Q over ensemble draws embedded per mode"""
    if samples < MIN_SAMPLES:
        raise DomainError(f"Monte Carlo QFI needs at least {MIN_SAMPLES} samples, got {samples}")
    basis = ensemble.sampling_basis
    if mode == "collective":
        generators = collective_generators(basis, state.n)
    elif mode == "noncollective":
        generators = single_site_generators(basis, state.n)
    else:
        raise DomainError(f"Unknown mode '{mode}', expected collective or noncollective")

    kernel = QfiKernel(state)
    transformed = np.stack([kernel.transform(g) for g in generators])
    executor = executor or MonteCarloExecutor()
    logger.info(f"MC mean QFI: {mode} {ensemble.name}, {samples} samples, seed {seed}")

    values = executor.sample_values(
        _qfi_chunk, samples,
        ensemble=ensemble, mode=mode, n=state.n, seed=seed,
        transformed=transformed, weights=kernel.weights,
    )
    return summarize(values)


def mc_mean_qfi_summary(state: State, ensemble: HamiltonianEnsemble, samples: int, seed: int,
                        state_id: Optional[str] = None,
                        executor: Optional[MonteCarloExecutor] = None) -> QfiSummary:
    collective = mc_mean_qfi(state, ensemble, "collective", samples, seed, executor)
    noncollective = mc_mean_qfi(state, ensemble, "noncollective", samples, seed, executor)
    return QfiSummary(
        state_id=state_id or state.label,
        basis_id=ensemble.basis.name,
        ensemble_id=ensemble.name,
        mean_qfi_collective=collective.estimate,
        mean_qfi_noncollective=noncollective.estimate,
        std_error_collective=collective.std_error,
        std_error_noncollective=noncollective.std_error,
        provenance=Provenance.MONTE_CARLO,
        samples=samples,
        seed=seed,
    )
