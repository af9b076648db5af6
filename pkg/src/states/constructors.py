#!/usr/bin/env python3
"""
Constructors for the multipartite state families: GHZ, Dicke, qutrit Dicke, AME and Haar-random states
"""

import logging
from itertools import combinations, permutations
from math import comb, sqrt
from typing import Dict, List, Tuple

import numpy as np

from src.errors import StateArgumentError
from .models import PureState

logger = logging.getLogger(__name__)

# Six-qubit AME coefficients, ket order |000000>, |000001>, ..., |111111>; divide by 4*sqrt(2)
AME6_2_COEFFICIENTS = (
    1, 0, 0, -1, 0, 1, -1, 0, 0, 1, 1, 0, -1, 0, 0, -1,
    0, -1, 1, 0, 1, 0, 0, -1, -1, 0, 0, -1, 0, -1, -1, 0,
    0, -1, -1, 0, -1, 0, 0, -1, -1, 0, 0, 1, 0, 1, -1, 0,
    -1, 0, 0, -1, 0, 1, 1, 0, 0, -1, 1, 0, -1, 0, 0, 1,
)

# Four-qutrit AME kets, each with amplitude 1/3
AME4_3_KETS = ("0000", "0112", "0221", "1011", "1120", "1202", "2022", "2101", "2210")

# Four-qutrit Dicke family: (weight, pattern) pairs summed over distinct permutations
QUTRIT_DICKE_TERMS: Dict[int, Tuple[List[Tuple[int, str]], float]] = {
    1: ([(1, "0001")], 2.0),
    2: ([(2, "0011"), (1, "0002")], 2.0 * sqrt(7.0)),
    3: ([(2, "0111"), (1, "0012")], 2.0 * sqrt(7.0)),
    4: ([(4, "1111"), (2, "0112"), (1, "0022")], sqrt(70.0)),
}


def ket_index(digits: str, d: int) -> int:
    """Index of a computational ket given as a digit string, site 0 most significant"""
    return int(digits, d)


def ghz_state(n: int, d: int = 2) -> PureState:
    """(|0...0> + |1...1> + ... + |d-1...d-1>) / sqrt(d)"""
    if n < 2 or d < 2:
        raise StateArgumentError(f"GHZ state needs n >= 2 and d >= 2, got n={n}, d={d}")
    amplitudes = np.zeros(d ** n, dtype=complex)
    stride = (d ** n - 1) // (d - 1)
    amplitudes[[k * stride for k in range(d)]] = 1.0 / sqrt(d)
    return PureState(n=n, d=d, amplitudes=amplitudes, label=f"ghz{n}_{d}")


def ghz_minus_state(n: int) -> PureState:
    """(|0...0> - |1...1>) / sqrt(2)"""
    if n < 2:
        raise StateArgumentError(f"GHZ state needs n >= 2, got n={n}")
    amplitudes = np.zeros(2 ** n, dtype=complex)
    amplitudes[0] = 1.0 / sqrt(2.0)
    amplitudes[-1] = -1.0 / sqrt(2.0)
    return PureState(n=n, d=2, amplitudes=amplitudes, label=f"ghz{n}_minus")


def dicke_state(n: int, e: int) -> PureState:
    """Qubit Dicke state with e excitations, symmetric over all placements of the ones"""
    if n < 1 or not 0 <= e <= n:
        raise StateArgumentError(f"Dicke state needs 0 <= e <= n, got n={n}, e={e}")
    amplitudes = np.zeros(2 ** n, dtype=complex)
    weight = 1.0 / sqrt(comb(n, e))
    for ones in combinations(range(n), e):
        amplitudes[sum(1 << (n - 1 - s) for s in ones)] = weight
    return PureState(n=n, d=2, amplitudes=amplitudes, label=f"dicke{n}_{e}")


def qutrit_dicke(k: int) -> PureState:
    """Member k of the four-qutrit Dicke family (amplitudes as tabulated, no renormalization)"""
    if k not in QUTRIT_DICKE_TERMS:
        raise StateArgumentError(f"Qutrit Dicke index must be in 1..4, got {k}")
    terms, denominator = QUTRIT_DICKE_TERMS[k]
    amplitudes = np.zeros(3 ** 4, dtype=complex)
    for weight, pattern in terms:
        for digits in set(permutations(pattern)):
            amplitudes[ket_index("".join(digits), 3)] += weight / denominator
    return PureState(n=4, d=3, amplitudes=amplitudes, label=f"q4_{k}")


def ame_state(state_id: str) -> PureState:
    """Absolutely maximally entangled states: 'ame6_2' (six qubits) or 'ame4_3' (four qutrits)"""
    if state_id == "ame6_2":
        amplitudes = np.array(AME6_2_COEFFICIENTS, dtype=complex) / (4.0 * sqrt(2.0))
        return PureState(n=6, d=2, amplitudes=amplitudes, label=state_id)
    if state_id == "ame4_3":
        amplitudes = np.zeros(3 ** 4, dtype=complex)
        amplitudes[[ket_index(ket, 3) for ket in AME4_3_KETS]] = 1.0 / 3.0
        return PureState(n=4, d=3, amplitudes=amplitudes, label=state_id)
    raise StateArgumentError(f"Unknown AME state '{state_id}'. Available: ame6_2, ame4_3")


def haar_random_state(n: int, d: int, rng: np.random.Generator, label: str = "") -> PureState:
    """Normalized vector of i.i.d. standard complex Gaussians"""
    if n < 1 or d < 2:
        raise StateArgumentError(f"Haar state needs n >= 1 and d >= 2, got n={n}, d={d}")
    size = d ** n
    vector = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return PureState.from_unnormalized(n, d, vector, label=label or f"haar{n}_{d}")
