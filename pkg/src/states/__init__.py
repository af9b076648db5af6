"""
Multipartite qudit states, density matrices and correlation tensors
"""

from .constructors import (
    AME4_3_KETS,
    AME6_2_COEFFICIENTS,
    ame_state,
    dicke_state,
    ghz_minus_state,
    ghz_state,
    haar_random_state,
    ket_index,
    qutrit_dicke,
)
from .correlation import CorrelationTensor, correlation_tensor
from .factory import StateFactory
from .io import load_state, save_state, state_from_json, state_to_json
from .models import DensityMatrix, PureState, as_density_matrix, as_pure_state
from .properties import is_k_uniform, purity, reduced_state

__all__ = [
    "AME4_3_KETS",
    "AME6_2_COEFFICIENTS",
    "ame_state",
    "dicke_state",
    "ghz_minus_state",
    "ghz_state",
    "haar_random_state",
    "ket_index",
    "qutrit_dicke",
    "CorrelationTensor",
    "correlation_tensor",
    "StateFactory",
    "load_state",
    "save_state",
    "state_from_json",
    "state_to_json",
    "DensityMatrix",
    "PureState",
    "as_density_matrix",
    "as_pure_state",
    "is_k_uniform",
    "purity",
    "reduced_state",
]
