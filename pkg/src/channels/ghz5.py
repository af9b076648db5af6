#!/usr/bin/env python3
"""
Five-qubit GHZ state under collective spin-1/2 sphere noise.

The evolved state is a mixture over the symmetric-subspace basis
{D1, D2, D3, D4, GHZ+, GHZ-} with weights (z1, z2, z2, z1, z3, z4).
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from config.settings import get_ensemble_catalog
from src.hamiltonians import HamiltonianEnsemble
from src.states import PureState, dicke_state, ghz_minus_state, ghz_state
from src.utils import MonteCarloExecutor
from .channel import evolve_pure, local_unitaries
from .models import ChannelMode, ChannelSpec, Ghz5Coefficients, PopulationEstimate

logger = logging.getLogger(__name__)

GHZ5_SITES = 5
POPULATION_LABELS = ["D1", "D2", "D3", "D4", "GHZ+", "GHZ-"]
DEFAULT_ENSEMBLE = "pauli_sphere"


def ghz5_coefficient_grid(times: np.ndarray) -> np.ndarray:
    """Closed-form (z1, z2, z3, z4) for every time, shape (len(times), 4)"""
    t = np.asarray(times, dtype=float)
    half = np.sin(t / 2.0) ** 2
    z1 = half * (13 + 14 * np.cos(t) + 6 * np.cos(2 * t) + 2 * np.cos(3 * t)) / 21.0
    z2 = 8.0 / 63.0 * half ** 2 * (9 + 10 * np.cos(t) + 2 * np.cos(2 * t))
    z3 = (382 + 302 * np.cos(t) + 302 * np.cos(2 * t) + 137 * np.cos(3 * t)
          + 137 * np.cos(4 * t) + 126 * np.cos(5 * t)) / 1386.0
    z4 = (256 + 50 * np.cos(t) + 50 * np.cos(2 * t) - 115 * np.cos(3 * t)
          - 115 * np.cos(4 * t) - 126 * np.cos(5 * t)) / 1386.0
    return np.stack([z1, z2, z3, z4], axis=-1)


def ghz5_coefficients(t: float) -> Ghz5Coefficients:
    z = ghz5_coefficient_grid(np.array([t]))[0]
    return Ghz5Coefficients(t=float(t), zeta=tuple(float(v) for v in z))


def never_equal_spread(points: int = 10_000, t_max: float = 2.0 * np.pi) -> float:
    """min over a uniform grid on [0, t_max] of max_i z_i - min_i z_i"""
    grid = ghz5_coefficient_grid(np.linspace(0.0, t_max, points))
    return float(np.min(grid.max(axis=1) - grid.min(axis=1)))


def ghz5_basis_states() -> Dict[str, PureState]:
    """Orthonormal basis of the five-qubit symmetric subspace used for the populations"""
    states = {f"D{e}": dicke_state(GHZ5_SITES, e) for e in range(1, 5)}
    states["GHZ+"] = ghz_state(GHZ5_SITES, 2)
    states["GHZ-"] = ghz_minus_state(GHZ5_SITES)
    return states


def _basis_rows() -> np.ndarray:
    states = ghz5_basis_states()
    return np.stack([states[label].amplitudes.conj() for label in POPULATION_LABELS])


def _population_chunk(start: int, stop: int, psi_tensor: np.ndarray, spec: ChannelSpec,
                      rows: np.ndarray) -> np.ndarray:
    values = np.empty((stop - start, rows.shape[0]))
    for offset, index in enumerate(range(start, stop)):
        unitaries = local_unitaries(spec, GHZ5_SITES, 2, index)
        phi = evolve_pure(psi_tensor, unitaries).reshape(-1)
        values[offset] = np.abs(rows @ phi) ** 2
    return values


def _populations(spec: ChannelSpec, executor: Optional[MonteCarloExecutor]) -> PopulationEstimate:
    executor = executor or MonteCarloExecutor()
    psi = ghz_state(GHZ5_SITES, 2)
    rows = _basis_rows()

    per_sample = executor.sample_values(_population_chunk, spec.samples,
                                        psi_tensor=psi.tensor(), spec=spec, rows=rows)
    populations = per_sample.mean(axis=0)
    std_errors = per_sample.std(axis=0, ddof=1) / np.sqrt(spec.samples) if spec.samples > 1 \
        else np.zeros(len(POPULATION_LABELS))

    leakage = 1.0 - float(np.sum(populations))
    t = None if spec.mode == ChannelMode.TWIRL else spec.t
    logger.info(f"GHZ5 {spec.mode.value} populations at t={t}: leakage {leakage:.2e}")
    return PopulationEstimate(t=t, labels=list(POPULATION_LABELS), populations=populations,
                              std_errors=std_errors, leakage=leakage,
                              samples=spec.samples, seed=spec.seed)


def ghz5_populations_mc(t: float, samples: int, seed: int,
                        ensemble: Optional[HamiltonianEnsemble] = None,
                        executor: Optional[MonteCarloExecutor] = None) -> PopulationEstimate:
    """Populations of the collectively evolved GHZ5+ state (spin-1/2 sphere ensemble)"""
    ensemble = ensemble or get_ensemble_catalog().get_ensemble(DEFAULT_ENSEMBLE)
    spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=ensemble, t=t, samples=samples, seed=seed)
    return _populations(spec, executor)


def twirl_populations_mc(samples: int, seed: int,
                         executor: Optional[MonteCarloExecutor] = None) -> PopulationEstimate:
    """Populations of the Haar-twirled GHZ5+ state; each tends to 1/6"""
    spec = ChannelSpec(mode=ChannelMode.TWIRL, samples=samples, seed=seed)
    return _populations(spec, executor)


def max_population_deviation(estimate: PopulationEstimate) -> float:
    """max |MC - closed form| over the six populations"""
    expected = np.array(ghz5_coefficients(estimate.t).populations)
    return float(np.max(np.abs(estimate.populations - expected)))


def population_table(times: List[float]) -> List[Dict[str, float]]:
    rows = []
    for t in times:
        coefficients = ghz5_coefficients(t)
        row = {"t": t, **{f"zeta{i + 1}": z for i, z in enumerate(coefficients.zeta)}}
        row["normalization"] = coefficients.normalization
        rows.append(row)
    return rows
