"""
Bures fidelity, affinity and the averaged Tamm-Mandelstam bound
"""

import math
from typing import Union

import numpy as np

from config.settings import get_settings
from src.errors import DimensionMismatchError, DomainError
from src.linalg import psd_sqrt
from src.states import DensityMatrix, PureState, as_density_matrix

State = Union[PureState, DensityMatrix]
Times = Union[float, np.ndarray]


def _pair(rho: State, sigma: State):
    a, b = as_density_matrix(rho), as_density_matrix(sigma)
    if a.dim != b.dim:
        raise DimensionMismatchError(f"States act on dimensions {a.dim} and {b.dim}")
    return a, b


def bures_fidelity(rho: State, sigma: State) -> float:
    """(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, or <psi|sigma|psi> when rho is pure"""
    a, b = _pair(rho, sigma)
    tol = get_settings().psd_tol
    b.check_psd(tol)

    if isinstance(rho, PureState) or a.is_pure():
        value = float(np.real(np.trace(a.matrix @ b.matrix)))
    else:
        root_a = psd_sqrt(a.matrix, tol=tol)
        inner = root_a @ b.matrix @ root_a
        value = float(np.real(np.trace(psd_sqrt(0.5 * (inner + inner.conj().T), tol=tol)))) ** 2
    return min(max(value, 0.0), 1.0)


def affinity(rho: State, sigma: State) -> float:
    """Tr(sqrt(rho) sqrt(sigma))"""
    a, b = _pair(rho, sigma)
    tol = get_settings().psd_tol
    value = float(np.real(np.trace(psd_sqrt(a.matrix, tol=tol) @ psd_sqrt(b.matrix, tol=tol))))
    return min(max(value, 0.0), 1.0)


def _check_mean_qfi(mean_qfi: float) -> None:
    if mean_qfi <= 0:
        raise DomainError(f"The averaged bound needs a positive mean QFI, got {mean_qfi}")


def tm_bound(mean_qfi: float, t: Times) -> Times:
    """cos^2(Omega t) with Omega = sqrt(mean_qfi) / 2"""
    _check_mean_qfi(mean_qfi)
    value = np.cos(0.5 * math.sqrt(mean_qfi) * np.asarray(t, dtype=float)) ** 2
    return float(value) if np.ndim(value) == 0 else value


def t_star(mean_qfi: float) -> float:
    """pi / sqrt(mean_qfi), the end of the window where the bound is monotone"""
    _check_mean_qfi(mean_qfi)
    return math.pi / math.sqrt(mean_qfi)


def bound_is_valid(mean_qfi: float, t: Times) -> Union[bool, np.ndarray]:
    valid = np.asarray(t, dtype=float) <= t_star(mean_qfi)
    return bool(valid) if np.ndim(valid) == 0 else valid
