#!/usr/bin/env python3
"""
Random local Hamiltonian ensembles invariant under orthogonal rotations of the coefficient vector
"""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.errors import ArgumentError, EnsembleConfigError
from src.utils.rng import counter_rng
from .bases import BasisFactory, LocalBasis

logger = logging.getLogger(__name__)


class EnsembleKind(str, Enum):
    SPHERE = "sphere"
    GUE = "gue"
    GOE = "goe"


class HamiltonianEnsemble(BaseModel):
    """Sampling rule for coefficient vectors alpha over a (restricted) generator set.

    sphere: alpha uniform on S^{r-1}, times `scale`
    gue:    alpha i.i.d. normal with variance scale^2 / c, i.e. entrywise GUE on the spanned subspace
    goe:    as gue with doubled variance, only over real symmetric generators
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: EnsembleKind
    basis: LocalBasis
    restriction: Optional[List[int]] = None
    include_identity: bool = False
    scale: float = Field(default=1.0, ge=0.0)
    name: str = ""

    @model_validator(mode="after")
    def _check_configuration(self):
        if self.restriction is not None:
            try:
                self.basis.restrict(self.restriction)
            except ArgumentError as e:
                raise EnsembleConfigError(str(e))
        if self.kind == EnsembleKind.GOE and not self.sampling_basis.is_real_symmetric():
            raise EnsembleConfigError(
                f"GOE needs real symmetric generators; '{self.sampling_basis.name}' has complex ones"
            )
        if not self.name:
            self.name = f"{self.kind.value}:{self.sampling_basis.name}"
        return self

    @property
    def sampling_basis(self) -> LocalBasis:
        """Generators actually spanned by the sampled Hamiltonians"""
        basis = self.basis.restrict(self.restriction) if self.restriction else self.basis
        return basis.with_identity() if self.include_identity else basis

    @property
    def r(self) -> int:
        return self.sampling_basis.r

    @property
    def c(self) -> float:
        return self.basis.c

    def coefficient_variance(self) -> float:
        """E[alpha_i^2] for every sampled coordinate"""
        if self.kind == EnsembleKind.SPHERE:
            return self.scale ** 2 / self.r
        if self.kind == EnsembleKind.GUE:
            return self.scale ** 2 / self.c
        return 2.0 * self.scale ** 2 / self.c

    def mean_purity(self) -> float:
        """E[Tr(H_k^2)] over the ensemble"""
        return self.coefficient_variance() * self.r * self.c

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """One coefficient vector of length r"""
        g = rng.standard_normal(self.r)
        if self.kind == EnsembleKind.SPHERE:
            return self.scale * g / np.linalg.norm(g)
        return np.sqrt(self.coefficient_variance()) * g

    def sample_indexed(self, seed: int, index: int, stream: int = 0) -> np.ndarray:
        return self.sample(counter_rng(seed, index, stream))

    def sample_many(self, count: int, seed: int) -> np.ndarray:
        """Coefficient vectors for sample indices 0..count-1, shape (count, r)"""
        return np.stack([self.sample_indexed(seed, index) for index in range(count)])

    def hamiltonian(self, alpha: np.ndarray) -> np.ndarray:
        return self.sampling_basis.hamiltonian(alpha)

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "basis": self.basis.name,
            "d": self.basis.d,
            "restriction": self.restriction,
            "include_identity": self.include_identity,
            "scale": self.scale,
            "r": self.r,
            "mean_purity": self.mean_purity(),
        }


def second_moment_mc(ensemble: HamiltonianEnsemble, samples: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Monte Carlo estimate of E[Tr(H_k G_i) Tr(H_k G_j)] over the sampled generators.

    Returns the (r, r) matrix of sample means and the matrix of standard errors.
    The exact value is delta_ij * (c / r) * mean_purity.
    """
    basis = ensemble.sampling_basis
    generators = np.stack(basis.generators)
    projections = np.empty((samples, basis.r))
    for index in range(samples):
        h = ensemble.hamiltonian(ensemble.sample_indexed(seed, index))
        # Tr(H G_i) = sum_ab H_ab (G_i)_ba
        projections[index] = np.einsum("ab,iba->i", h, generators).real

    products = projections[:, :, None] * projections[:, None, :]
    mean = products.mean(axis=0)
    std_error = products.std(axis=0, ddof=1) / np.sqrt(samples)
    return mean, std_error


def ensemble_from_config(config: Dict[str, Any], name: str = "") -> HamiltonianEnsemble:
    """Build an ensemble from {kind, basis, d, restriction, include_identity, scale}"""
    try:
        kind = EnsembleKind(str(config["kind"]).lower())
    except KeyError:
        raise EnsembleConfigError("Ensemble config needs a 'kind'")
    except ValueError:
        available = ", ".join(k.value for k in EnsembleKind)
        raise EnsembleConfigError(f"Unknown ensemble kind '{config['kind']}'. Available: {available}")

    basis_name = config.get("basis")
    if basis_name is None:
        raise EnsembleConfigError("Ensemble config needs a 'basis'")
    try:
        basis = BasisFactory.create(basis_name, config.get("d"))
    except ArgumentError as e:
        raise EnsembleConfigError(str(e))

    try:
        return HamiltonianEnsemble(
            kind=kind,
            basis=basis,
            restriction=config.get("restriction"),
            include_identity=bool(config.get("include_identity", False)),
            scale=float(config.get("scale", 1.0)),
            name=name or config.get("name", ""),
        )
    except ValidationError as e:
        raise EnsembleConfigError(f"Invalid ensemble config: {e}")
