"""
Channel specifications and result records
"""

import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.hamiltonians import HamiltonianEnsemble


class ChannelMode(str, Enum):
    COLLECTIVE = "collective"
    NONCOLLECTIVE = "noncollective"
    TWIRL = "twirl"


class ChannelSpec(BaseModel):
    """One noisy channel: the averaging rule, the evolution time and the Monte Carlo budget.

    `fixed_alpha` replaces every random draw by the same coefficient vector, which turns
    the dynamical channels into a single deterministic unitary. Twirl ignores `t`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: ChannelMode
    ensemble: Optional[HamiltonianEnsemble] = None
    t: float = Field(default=0.0, ge=0.0)
    samples: int = Field(default=10_000, ge=1)
    seed: int = Field(default=20190101, ge=0)
    fixed_alpha: Optional[List[float]] = None

    @model_validator(mode="after")
    def _check_ensemble(self):
        if self.mode != ChannelMode.TWIRL and self.ensemble is None:
            raise ValueError(f"{self.mode.value} channels need a Hamiltonian ensemble")
        if self.fixed_alpha is not None:
            if self.ensemble is None:
                raise ValueError("fixed_alpha needs an ensemble to expand the coefficients")
            if len(self.fixed_alpha) != self.ensemble.r:
                raise ValueError(f"fixed_alpha needs {self.ensemble.r} coefficients, got {len(self.fixed_alpha)}")
        return self

    def at_time(self, t: float) -> "ChannelSpec":
        return self.model_copy(update={"t": float(t)})

    def describe(self) -> str:
        ensemble = self.ensemble.name if self.ensemble is not None else "haar"
        return f"{self.mode.value}/{ensemble}"


class FidelityCurve(BaseModel):
    """Fidelity and averaged bound on a time grid"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    state_id: str
    spec: ChannelSpec
    mean_qfi: float
    method: str
    times: np.ndarray
    fidelity: np.ndarray
    fidelity_stderr: np.ndarray
    bound: np.ndarray
    valid_window: np.ndarray

    @field_validator("times")
    @classmethod
    def _strictly_increasing(cls, value: np.ndarray) -> np.ndarray:
        value = np.asarray(value, dtype=float)
        if value.ndim != 1 or value.size == 0:
            raise ValueError("Time grid must be a non-empty vector")
        if np.any(np.diff(value) <= 0):
            raise ValueError("Time grid must be strictly increasing")
        return value

    @property
    def t_star(self) -> float:
        return math.pi / math.sqrt(self.mean_qfi) if self.mean_qfi > 0 else math.inf

    @property
    def omega(self) -> float:
        return 0.5 * math.sqrt(self.mean_qfi)


class Ghz5Coefficients(BaseModel):
    """Closed-form probabilities of the evolved five-qubit GHZ state"""

    t: float
    zeta: Tuple[float, float, float, float]

    @property
    def normalization(self) -> float:
        z1, z2, z3, z4 = self.zeta
        return 2 * z1 + 2 * z2 + z3 + z4

    @property
    def populations(self) -> Tuple[float, ...]:
        """Expected weights on (D1, D2, D3, D4, GHZ+, GHZ-)"""
        z1, z2, z3, z4 = self.zeta
        return (z1, z2, z2, z1, z3, z4)

    @property
    def spread(self) -> float:
        return max(self.zeta) - min(self.zeta)


class PopulationEstimate(BaseModel):
    """Monte Carlo populations on the symmetric-subspace basis"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    t: Optional[float]
    labels: List[str]
    populations: np.ndarray
    std_errors: np.ndarray
    leakage: float
    samples: int
    seed: int
