"""
QFI result records
"""

import math
from enum import Enum
from typing import Any, Dict, Optional

import orjson
from pydantic import BaseModel, Field, computed_field


class Provenance(str, Enum):
    ANALYTIC = "analytic"
    TENSOR_FORM = "tensor-form"
    MONTE_CARLO = "monte-carlo"


def omega(mean_qfi: float) -> float:
    """Frequency of the averaged bound, half the square root of the mean QFI"""
    return 0.5 * math.sqrt(mean_qfi)


def t_star(mean_qfi: float) -> float:
    return math.pi / math.sqrt(mean_qfi) if mean_qfi > 0 else math.inf


def precision_bound(mean_qfi: float) -> float:
    """Smallest resolvable shift in t, 1 / sqrt(mean_qfi)"""
    return 1.0 / math.sqrt(mean_qfi) if mean_qfi > 0 else math.inf


class QfiSummary(BaseModel):
    """Mean QFI of one state under collective and non-collective noise"""

    state_id: str
    basis_id: str
    ensemble_id: str
    mean_qfi_collective: float = Field(ge=0.0)
    mean_qfi_noncollective: float = Field(ge=0.0)
    provenance: Provenance = Provenance.ANALYTIC
    std_error_collective: Optional[float] = None
    std_error_noncollective: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    @computed_field
    @property
    def omega_collective(self) -> float:
        return omega(self.mean_qfi_collective)

    @computed_field
    @property
    def omega_noncollective(self) -> float:
        return omega(self.mean_qfi_noncollective)

    @computed_field
    @property
    def t_star_collective(self) -> float:
        return t_star(self.mean_qfi_collective)

    @computed_field
    @property
    def t_star_noncollective(self) -> float:
        return t_star(self.mean_qfi_noncollective)

    @computed_field
    @property
    def delta_t_collective(self) -> float:
        return precision_bound(self.mean_qfi_collective)

    @computed_field
    @property
    def delta_t_noncollective(self) -> float:
        return precision_bound(self.mean_qfi_noncollective)

    def to_row(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def to_json(self) -> bytes:
        return orjson.dumps(self.to_row(), option=orjson.OPT_SERIALIZE_NUMPY)
