"""
Reduced states, purities and k-uniformity
"""

from itertools import combinations
from typing import Iterable, Union

import numpy as np

from src.errors import ArgumentError
from .models import DensityMatrix, PureState

State = Union[PureState, DensityMatrix]


def reduced_state(state: State, keep: Iterable[int]) -> DensityMatrix:
    return state.reduced(keep)


def purity(state: State) -> float:
    """Tr(rho^2)"""
    if isinstance(state, PureState):
        return 1.0
    return state.purity()


def is_k_uniform(state: State, k: int, tol: float = 1e-10) -> bool:
    """True if every k-site reduction equals the maximally mixed state"""
    if not 1 <= k <= state.n // 2:
        raise ArgumentError(f"k must be in 1..{state.n // 2} for n={state.n}, got {k}")
    target = np.eye(state.d ** k) / state.d ** k
    for sites in combinations(range(state.n), k):
        if np.max(np.abs(state.reduced(sites).matrix - target)) > tol:
            return False
    return True
