#!/usr/bin/env python3
"""
Local operator bases - Pauli, spin-j and generalized Gell-Mann generators
"""

import logging
from math import sqrt
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.errors import ArgumentError

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-12


class LocalBasis(BaseModel):
    """Orthogonal single-site generators with Tr(H_i H_j) = c * delta_ij.

    The identity element H_0 = h0 * 1 with h0 = sqrt(c / d) is not stored among
    the generators; operators() returns the stack [H_0, H_1, ..., H_r].
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    d: int = Field(ge=2)
    generators: List[np.ndarray]
    labels: List[str]
    traceless: bool = True

    @model_validator(mode="after")
    def _check_generators(self):
        if not self.generators:
            raise ValueError("A basis needs at least one generator")
        if len(self.labels) != len(self.generators):
            raise ValueError("Every generator needs a label")
        self.generators = [np.asarray(g, dtype=complex) for g in self.generators]

        c = float(np.trace(self.generators[0] @ self.generators[0]).real)
        for i, gi in enumerate(self.generators):
            if gi.shape != (self.d, self.d):
                raise ValueError(f"Generator {self.labels[i]} has shape {gi.shape}, expected d={self.d}")
            if np.max(np.abs(gi - gi.conj().T)) > ORTHOGONALITY_TOL:
                raise ValueError(f"Generator {self.labels[i]} is not Hermitian")
            if self.traceless and abs(np.trace(gi)) > ORTHOGONALITY_TOL:
                raise ValueError(f"Generator {self.labels[i]} is not traceless")
            for j in range(i, len(self.generators)):
                overlap = np.trace(gi @ self.generators[j])
                expected = c if i == j else 0.0
                if abs(overlap - expected) > ORTHOGONALITY_TOL * max(1.0, c):
                    raise ValueError(
                        f"Tr({self.labels[i]} {self.labels[j]}) = {overlap.real:.6g}, expected {expected}"
                    )
        return self

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def c(self) -> float:
        """Common Hilbert-Schmidt norm Tr(H_i^2)"""
        return float(np.trace(self.generators[0] @ self.generators[0]).real)

    @property
    def h0(self) -> float:
        """Scalar of the identity element, Tr(H_0^2) = c"""
        return sqrt(self.c / self.d)

    def identity_element(self) -> np.ndarray:
        return self.h0 * np.eye(self.d, dtype=complex)

    def operators(self) -> np.ndarray:
        """Stack [H_0, H_1, ..., H_r] of shape (r + 1, d, d)"""
        return np.stack([self.identity_element()] + list(self.generators))

    def hamiltonian(self, alpha: Sequence[float]) -> np.ndarray:
        """H_alpha = sum_i alpha_i H_i"""
        alpha = np.asarray(alpha, dtype=float)
        if alpha.shape != (self.r,):
            raise ArgumentError(f"Expected {self.r} coefficients for basis '{self.name}', got {alpha.shape}")
        return np.tensordot(alpha, np.stack(self.generators), axes=1)

    def restrict(self, indices: Sequence[int]) -> "LocalBasis":
        """Sub-basis spanned by the generators at the given 1-based indices"""
        indices = list(indices)
        if not indices or len(set(indices)) != len(indices) or min(indices) < 1 or max(indices) > self.r:
            raise ArgumentError(f"Invalid restriction {indices} for basis '{self.name}' with r={self.r}")
        return LocalBasis(
            name=f"{self.name}[{','.join(str(i) for i in indices)}]",
            d=self.d,
            generators=[self.generators[i - 1] for i in indices],
            labels=[self.labels[i - 1] for i in indices],
            traceless=self.traceless,
        )

    def with_identity(self) -> "LocalBasis":
        """Generator set extended by H_0 in front"""
        return LocalBasis(
            name=f"{self.name}+id",
            d=self.d,
            generators=[self.identity_element()] + list(self.generators),
            labels=["id"] + list(self.labels),
            traceless=False,
        )

    def is_real_symmetric(self, tol: float = ORTHOGONALITY_TOL) -> bool:
        return all(np.max(np.abs(g.imag)) <= tol for g in self.generators)

    def square_sum(self) -> np.ndarray:
        return sum(g @ g for g in self.generators)

    def square_sum_is_scalar(self, tol: float = 1e-10) -> bool:
        """True if sum_i H_i^2 is proportional to the identity"""
        total = self.square_sum()
        scalar = np.trace(total).real / self.d
        return bool(np.max(np.abs(total - scalar * np.eye(self.d))) <= tol)


def pauli_basis() -> LocalBasis:
    """sigma_i / 2, c = 1/2"""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return LocalBasis(name="pauli", d=2, generators=[sx / 2, sy / 2, sz / 2], labels=["x", "y", "z"])


def spin_matrices(d: int) -> List[np.ndarray]:
    """J_x, J_y, J_z for spin j = (d - 1) / 2 in the basis m = j, j-1, ..., -j"""
    j = (d - 1) / 2.0
    m = j - np.arange(d)
    raising = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        # <m_{k-1}| J_+ |m_k>
        raising[k - 1, k] = sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jx = (raising + raising.conj().T) / 2
    jy = (raising - raising.conj().T) / 2j
    jz = np.diag(m).astype(complex)
    return [jx, jy, jz]


def spin_basis(d: int) -> LocalBasis:
    """Angular momentum generators, c = (2/3)(j+1)(j+1/2)j"""
    if d < 2:
        raise ArgumentError(f"spin basis needs d >= 2, got {d}")
    return LocalBasis(name="spin", d=d, generators=spin_matrices(d), labels=["x", "y", "z"])


def gellmann_basis(d: int) -> LocalBasis:
    """Generalized Gell-Mann matrices, d^2 - 1 generators with Tr(H_i H_j) = 2 delta_ij"""
    if d < 2:
        raise ArgumentError(f"gellmann basis needs d >= 2, got {d}")
    generators: List[np.ndarray] = []
    labels: List[str] = []

    def unit(a: int, b: int) -> np.ndarray:
        e = np.zeros((d, d), dtype=complex)
        e[a, b] = 1.0
        return e

    for k in range(1, d):
        for j in range(k):
            generators.append(unit(j, k) + unit(k, j))
            labels.append(f"s{j}{k}")
            generators.append(-1j * (unit(j, k) - unit(k, j)))
            labels.append(f"a{j}{k}")
        diagonal = np.zeros(d)
        diagonal[:k] = 1.0
        diagonal[k] = -k
        generators.append(np.diag(sqrt(2.0 / (k * (k + 1))) * diagonal).astype(complex))
        labels.append(f"d{k}")

    return LocalBasis(name="gellmann", d=d, generators=generators, labels=labels)


class BasisFactory:
    """Registry of local bases by name"""

    _bases: Dict[str, Callable[[int], LocalBasis]] = {
        "pauli": lambda d: pauli_basis(),
        "spin": spin_basis,
        "gellmann": gellmann_basis,
    }

    @classmethod
    def create(cls, name: str, d: Optional[int] = None) -> LocalBasis:
        if name not in cls._bases:
            available = ", ".join(cls._bases.keys())
            raise ArgumentError(f"Unknown basis: {name}. Available: {available}")
        if name == "pauli":
            if d not in (None, 2):
                raise ArgumentError(f"pauli basis requires d = 2, got {d}")
            return pauli_basis()
        if d is None:
            raise ArgumentError(f"basis '{name}' needs a local dimension")
        return cls._bases[name](d)

    @classmethod
    def list_bases(cls) -> List[str]:
        return list(cls._bases.keys())
