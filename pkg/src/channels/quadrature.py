#!/usr/bin/env python3
"""
Deterministic sphere quadrature of the collective fidelity of pure states.

For a sphere ensemble over three generators the fidelity of the channel output with the
input is the average of |<psi| U_k^{x n} |psi>|^2 over k on S^2. The integrand is a
trigonometric polynomial in the sphere angles, so a Gauss-Legendre grid in cos(theta)
times a uniform azimuth grid converges after a few order doublings.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from config.settings import get_settings
from src.errors import UnsupportedRestrictionError
from src.hamiltonians import EnsembleKind, HamiltonianEnsemble
from src.linalg import hermitian_eig
from src.states import PureState
from .channel import evolve_pure

logger = logging.getLogger(__name__)


def sphere_grid(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Unit vectors and weights (summing to 1) of the product rule with `order` polar nodes"""
    x, w = np.polynomial.legendre.leggauss(order)
    azimuths = 2.0 * np.pi * np.arange(2 * order) / (2 * order)
    sin_theta = np.sqrt(1.0 - x ** 2)
    points = np.stack([
        np.outer(sin_theta, np.cos(azimuths)).ravel(),
        np.outer(sin_theta, np.sin(azimuths)).ravel(),
        np.repeat(x, 2 * order),
    ], axis=1)
    weights = np.repeat(w / 2.0, 2 * order) / (2 * order)
    return points, weights


def check_quadrature_support(ensemble: HamiltonianEnsemble) -> None:
    if ensemble.kind != EnsembleKind.SPHERE or ensemble.r != 3:
        raise UnsupportedRestrictionError(
            f"Sphere quadrature needs a sphere ensemble over 3 generators, "
            f"got {ensemble.kind.value} with r={ensemble.r}; use the Monte Carlo path"
        )


def _fidelity_at_order(psi: PureState, ensemble: HamiltonianEnsemble, times: np.ndarray,
                       order: int) -> np.ndarray:
    points, weights = sphere_grid(order)
    psi_tensor = psi.tensor()
    flat = psi.amplitudes
    values = np.zeros(times.size)
    for k, weight in zip(points, weights):
        eig = hermitian_eig(ensemble.hamiltonian(ensemble.scale * k))
        v = eig.eigenvectors
        for j, t in enumerate(times):
            u = (v * np.exp(-1j * t * eig.eigenvalues)) @ v.conj().T
            phi = evolve_pure(psi_tensor, [u] * psi.n).reshape(-1)
            values[j] += weight * abs(np.vdot(flat, phi)) ** 2
    return values


def quadrature_fidelity(psi: PureState, ensemble: HamiltonianEnsemble, times: Sequence[float],
                        order: Optional[int] = None, tol: Optional[float] = None) -> np.ndarray:
    """Collective fidelity on a time grid; the polar order doubles until the grid values settle"""
    check_quadrature_support(ensemble)
    settings = get_settings()
    times = np.atleast_1d(np.asarray(times, dtype=float))
    tol = tol if tol is not None else settings.quadrature_tol

    if order is not None:
        return _fidelity_at_order(psi, ensemble, times, order)

    order = settings.quadrature_start_order
    previous = _fidelity_at_order(psi, ensemble, times, order)
    while order * 2 <= settings.quadrature_max_order:
        order *= 2
        current = _fidelity_at_order(psi, ensemble, times, order)
        change = float(np.max(np.abs(current - previous)))
        previous = current
        if change < tol:
            logger.debug(f"Sphere quadrature converged at order {order} (change {change:.2e})")
            return current
    logger.warning(f"Sphere quadrature not converged below {tol:g} at order {order}")
    return previous


def exact_fidelity_pure_collective(psi: PureState, ensemble: HamiltonianEnsemble, t: float,
                                   order: Optional[int] = None) -> float:
    return float(quadrature_fidelity(psi, ensemble, [t], order=order)[0])
