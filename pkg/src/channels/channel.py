#!/usr/bin/env python3
"""
Monte Carlo realization of the collective, non-collective and twirling channels
"""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from src.errors import ArgumentError
from src.hamiltonians import HamiltonianEnsemble
from src.linalg import apply_local, exp_hermitian, haar_unitary, hermitian_eig
from src.qfi.monte_carlo import draw_coefficients
from src.states import DensityMatrix, PureState, as_density_matrix
from src.utils import McEstimate, MonteCarloExecutor, counter_rng
from .models import ChannelMode, ChannelSpec

logger = logging.getLogger(__name__)

State = Union[PureState, DensityMatrix]


def local_hamiltonians(spec: ChannelSpec, n: int, index: int) -> List[np.ndarray]:
    """Per-site Hamiltonians of sample `index`; depends only on (seed, index), never on t"""
    ensemble: HamiltonianEnsemble = spec.ensemble
    if spec.fixed_alpha is not None:
        h = ensemble.hamiltonian(np.asarray(spec.fixed_alpha, dtype=float))
        return [h] * n
    alpha = draw_coefficients(ensemble, spec.mode.value, n, spec.seed, index)
    if spec.mode == ChannelMode.COLLECTIVE:
        return [ensemble.hamiltonian(alpha)] * n
    return [ensemble.hamiltonian(a) for a in alpha.reshape(n, ensemble.r)]


def local_unitaries(spec: ChannelSpec, n: int, d: int, index: int) -> List[np.ndarray]:
    """Per-site unitaries of sample `index` at time spec.t"""
    if spec.mode == ChannelMode.TWIRL:
        return [haar_unitary(d, counter_rng(spec.seed, index))] * n
    hamiltonians = local_hamiltonians(spec, n, index)
    if spec.mode == ChannelMode.COLLECTIVE or spec.fixed_alpha is not None:
        return [exp_hermitian(hamiltonians[0], spec.t)] * n
    return [exp_hermitian(h, spec.t) for h in hamiltonians]


class LocalPropagator:
    """Eigendecompositions of the per-site Hamiltonians of one sample, reused across times"""

    def __init__(self, hamiltonians: Sequence[np.ndarray]):
        shared = all(h is hamiltonians[0] for h in hamiltonians)
        decompositions = [hermitian_eig(hamiltonians[0])] if shared else [hermitian_eig(h) for h in hamiltonians]
        self.n = len(hamiltonians)
        self.decompositions = decompositions

    def unitaries(self, t: float) -> List[np.ndarray]:
        local = [(e.eigenvectors * np.exp(-1j * t * e.eigenvalues)) @ e.eigenvectors.conj().T
                 for e in self.decompositions]
        return local * self.n if len(local) == 1 else local


def evolve_pure(psi_tensor: np.ndarray, unitaries: Sequence[np.ndarray]) -> np.ndarray:
    for site, u in enumerate(unitaries):
        psi_tensor = apply_local(psi_tensor, u, site)
    return psi_tensor


def evolve_density(rho_tensor: np.ndarray, unitaries: Sequence[np.ndarray]) -> np.ndarray:
    """U rho U^dagger on a density matrix stored with n row axes then n column axes"""
    n = len(unitaries)
    for site, u in enumerate(unitaries):
        rho_tensor = apply_local(rho_tensor, u, site)
        rho_tensor = apply_local(rho_tensor, u.conj(), n + site)
    return rho_tensor


def _channel_chunk(start: int, stop: int, rho_tensor: np.ndarray, spec: ChannelSpec,
                   n: int, d: int) -> np.ndarray:
    total = np.zeros_like(rho_tensor)
    for index in range(start, stop):
        total += evolve_density(rho_tensor, local_unitaries(spec, n, d, index))
    return total


def channel_average(state: State, spec: ChannelSpec,
                    executor: Optional[MonteCarloExecutor] = None) -> np.ndarray:
    """Raw sample average of U rho U^dagger, before Hermitization and renormalization"""
    rho = as_density_matrix(state)
    n, d = rho.n, rho.d
    executor = executor or MonteCarloExecutor()
    total = executor.reduce_sum(
        _channel_chunk, spec.samples,
        rho_tensor=rho.matrix.reshape([d] * (2 * n)), spec=spec, n=n, d=d,
    )
    return total.reshape(rho.dim, rho.dim) / spec.samples


def apply_channel(state: State, spec: ChannelSpec,
                  executor: Optional[MonteCarloExecutor] = None) -> DensityMatrix:
    """Average of U rho U^dagger over spec.samples draws, renormalized to unit trace"""
    rho = as_density_matrix(state)
    if spec.mode != ChannelMode.TWIRL and spec.t == 0.0:
        return rho.model_copy()

    n, d = rho.n, rho.d
    averaged = channel_average(rho, spec, executor)

    drift = abs(np.trace(averaged) - 1.0)
    hermiticity = float(np.max(np.abs(averaged - averaged.conj().T)))
    logger.debug(f"Channel {spec.describe()} t={spec.t}: trace drift {drift:.2e}, "
                 f"Hermiticity defect {hermiticity:.2e}")
    return DensityMatrix.from_matrix(averaged, n=n, d=d, label=rho.label)


def _overlap_chunk(start: int, stop: int, psi_tensor: np.ndarray, spec: ChannelSpec,
                   times: np.ndarray) -> np.ndarray:
    n = psi_tensor.ndim
    psi = psi_tensor.reshape(-1)
    values = np.empty((stop - start, times.size))
    for offset, index in enumerate(range(start, stop)):
        propagator = LocalPropagator(local_hamiltonians(spec, n, index))
        for k, t in enumerate(times):
            phi = evolve_pure(psi_tensor, propagator.unitaries(t)).reshape(-1)
            values[offset, k] = abs(np.vdot(psi, phi)) ** 2
    return values


def overlap_fidelity_mc(psi: PureState, spec: ChannelSpec, times: Sequence[float],
                        executor: Optional[MonteCarloExecutor] = None) -> List[McEstimate]:
    """Mean of |<psi|U_k|psi>|^2 over the same draws at every time (common random numbers).

    For a pure input this is the Bures fidelity between psi and the channel output.
    """
    if spec.mode == ChannelMode.TWIRL:
        raise ArgumentError("Overlap curves need a dynamical channel")
    times = np.asarray(times, dtype=float)
    executor = executor or MonteCarloExecutor()
    values = executor.sample_values(_overlap_chunk, spec.samples,
                                    psi_tensor=psi.tensor(), spec=spec, times=times)
    count = values.shape[0]
    means = values.mean(axis=0)
    errors = values.std(axis=0, ddof=1) / np.sqrt(count) if count > 1 else np.zeros(times.size)
    return [McEstimate(float(m), float(e), count) for m, e in zip(means, errors)]
