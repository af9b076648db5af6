"""
Collective, non-collective and single-site embeddings of local Hamiltonians into n sites
"""

from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.errors import ArgumentError, DimensionMismatchError
from src.linalg import is_hermitian
from .bases import LocalBasis


class EmbeddingMode(str, Enum):
    COLLECTIVE = "collective"
    NONCOLLECTIVE = "noncollective"
    SINGLE_SITE = "single_site"


class EmbeddedHamiltonian(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    d: int = Field(ge=2)
    matrix: np.ndarray
    mode: EmbeddingMode
    site: Optional[int] = None
    index: Optional[int] = None

    @model_validator(mode="after")
    def _check_hermitian(self):
        dim = self.d ** self.n
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"Expected a {dim}x{dim} matrix, got {self.matrix.shape}")
        if not is_hermitian(self.matrix):
            raise ValueError("Embedded Hamiltonian is not Hermitian")
        return self


def embed_site(op: np.ndarray, n: int, site: int) -> np.ndarray:
    """1^{(site)} x op x 1^{(n - site - 1)}"""
    d = op.shape[0]
    if not 0 <= site < n:
        raise DimensionMismatchError(f"Site {site} out of range for n={n}")
    return np.kron(np.kron(np.eye(d ** site), op), np.eye(d ** (n - site - 1)))


def collective_sum(op: np.ndarray, n: int) -> np.ndarray:
    """sum_s op acting on site s"""
    return sum(embed_site(op, n, s) for s in range(n))


def embed_collective(alpha: Sequence[float], basis: LocalBasis, n: int) -> EmbeddedHamiltonian:
    """The same local Hamiltonian H_alpha on every site"""
    local = basis.hamiltonian(alpha)
    return EmbeddedHamiltonian(n=n, d=basis.d, matrix=collective_sum(local, n),
                               mode=EmbeddingMode.COLLECTIVE)


def embed_noncollective(alphas: Sequence[Sequence[float]], basis: LocalBasis, n: int) -> EmbeddedHamiltonian:
    """Independent local Hamiltonians H_{alpha_s} on each site s"""
    if len(alphas) != n:
        raise ArgumentError(f"Expected {n} coefficient vectors, got {len(alphas)}")
    matrix = sum(embed_site(basis.hamiltonian(alpha), n, s) for s, alpha in enumerate(alphas))
    return EmbeddedHamiltonian(n=n, d=basis.d, matrix=matrix, mode=EmbeddingMode.NONCOLLECTIVE)


def single_site_generator(basis: LocalBasis, n: int, site: int, index: int) -> EmbeddedHamiltonian:
    """Generator `index` (1-based) on `site` (0-based), bare identity elsewhere"""
    if not 1 <= index <= basis.r:
        raise ArgumentError(f"Generator index {index} out of range 1..{basis.r}")
    return EmbeddedHamiltonian(
        n=n,
        d=basis.d,
        matrix=embed_site(basis.generators[index - 1], n, site),
        mode=EmbeddingMode.SINGLE_SITE,
        site=site,
        index=index,
    )


def collective_generators(basis: LocalBasis, n: int) -> List[np.ndarray]:
    """sum_s H_i^{(s)} for every generator i of the basis"""
    return [collective_sum(g, n) for g in basis.generators]


def single_site_generators(basis: LocalBasis, n: int) -> List[np.ndarray]:
    """H_i on site s for every (s, i), site-major order"""
    return [embed_site(g, n, s) for s in range(n) for g in basis.generators]
