"""
State containers - normalized pure states and unit-trace density matrices over n qudits
"""

from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.errors import DimensionMismatchError, NotPSDError
from src.linalg import hermitian_eig, is_hermitian, partial_trace

NORM_TOL = 1e-12
TRACE_TOL = 1e-10


class PureState(BaseModel):
    """Normalized state vector; site 0 is the most significant base-d digit of a ket index"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    d: int = Field(ge=2)
    amplitudes: np.ndarray
    label: str = ""

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_complex_vector(cls, value):
        return np.asarray(value, dtype=complex).reshape(-1)

    @model_validator(mode="after")
    def _check_normalized(self):
        if self.amplitudes.shape[0] != self.d ** self.n:
            raise ValueError(
                f"Expected {self.d ** self.n} amplitudes for n={self.n}, d={self.d}, "
                f"got {self.amplitudes.shape[0]}"
            )
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"State is not normalized: <psi|psi> = {norm:.15g}")
        return self

    @classmethod
    def from_unnormalized(cls, n: int, d: int, vector: np.ndarray, label: str = "") -> "PureState":
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        return cls(n=n, d=d, amplitudes=vector / np.linalg.norm(vector), label=label)

    @property
    def dim(self) -> int:
        return self.d ** self.n

    def tensor(self) -> np.ndarray:
        """Amplitudes as an n-axis tensor, one axis per site"""
        return self.amplitudes.reshape([self.d] * self.n)

    def density_matrix(self) -> "DensityMatrix":
        psi = self.amplitudes
        return DensityMatrix(n=self.n, d=self.d, matrix=np.outer(psi, psi.conj()), label=self.label)

    def expectation(self, op: np.ndarray) -> float:
        self._check_operator(op)
        return float(np.vdot(self.amplitudes, op @ self.amplitudes).real)

    def variance(self, op: np.ndarray) -> float:
        """<H^2> - <H>^2 through ||H psi||^2, clipped at zero"""
        self._check_operator(op)
        h_psi = op @ self.amplitudes
        second = float(np.vdot(h_psi, h_psi).real)
        first = float(np.vdot(self.amplitudes, h_psi).real)
        return max(second - first * first, 0.0)

    def reduced(self, keep: Iterable[int]) -> "DensityMatrix":
        """Reduced density matrix of the kept sites, computed directly from the amplitudes"""
        keep = sorted(set(int(s) for s in keep))
        if not keep or keep[0] < 0 or keep[-1] >= self.n:
            raise DimensionMismatchError(f"Invalid kept sites {keep} for n={self.n}")
        traced = [s for s in range(self.n) if s not in keep]
        block = np.transpose(self.tensor(), keep + traced).reshape(self.d ** len(keep), -1)
        return DensityMatrix(n=len(keep), d=self.d, matrix=block @ block.conj().T)

    def _check_operator(self, op: np.ndarray) -> None:
        if np.shape(op) != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"Operator of shape {np.shape(op)} does not act on dimension {self.dim}"
            )


class DensityMatrix(BaseModel):
    """Hermitian unit-trace matrix; positivity is checked on demand with check_psd()"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int = Field(ge=1)
    d: int = Field(ge=2)
    matrix: np.ndarray
    label: str = ""

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_complex_matrix(cls, value):
        return np.asarray(value, dtype=complex)

    @model_validator(mode="after")
    def _check_matrix(self):
        dim = self.d ** self.n
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"Expected a {dim}x{dim} matrix, got {self.matrix.shape}")
        if not is_hermitian(self.matrix, TRACE_TOL):
            raise ValueError("Density matrix is not Hermitian")
        trace = np.trace(self.matrix)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"Density matrix trace is {trace.real:.15g}, expected 1")
        return self

    @classmethod
    def maximally_mixed(cls, n: int, d: int) -> "DensityMatrix":
        dim = d ** n
        return cls(n=n, d=d, matrix=np.eye(dim) / dim, label="maximally_mixed")

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, n: int, d: int, label: str = "") -> "DensityMatrix":
        """Hermitize and trace-normalize a matrix carrying small numerical drift"""
        matrix = np.asarray(matrix, dtype=complex)
        matrix = 0.5 * (matrix + matrix.conj().T)
        return cls(n=n, d=d, matrix=matrix / np.trace(matrix).real, label=label)

    @property
    def dim(self) -> int:
        return self.d ** self.n

    def check_psd(self, tol: float = TRACE_TOL) -> "DensityMatrix":
        lowest = float(hermitian_eig(self.matrix).eigenvalues[-1])
        if lowest < -tol:
            raise NotPSDError(f"Density matrix has eigenvalue {lowest:.3e}")
        return self

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def is_pure(self, tol: float = 1e-10) -> bool:
        return abs(self.purity() - 1.0) <= tol

    def reduced(self, keep: Iterable[int]) -> "DensityMatrix":
        keep = sorted(set(int(s) for s in keep))
        matrix = partial_trace(self.matrix, [self.d] * self.n, keep)
        return DensityMatrix(n=len(keep), d=self.d, matrix=matrix)

    def expectation(self, op: np.ndarray) -> float:
        if np.shape(op) != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"Operator of shape {np.shape(op)} does not act on dimension {self.dim}"
            )
        return float(np.real(np.trace(self.matrix @ op)))


def as_density_matrix(state) -> DensityMatrix:
    """Accept either container and return the density matrix"""
    if isinstance(state, PureState):
        return state.density_matrix()
    if isinstance(state, DensityMatrix):
        return state
    raise TypeError(f"Expected PureState or DensityMatrix, got {type(state).__name__}")


def as_pure_state(state, tol: float = 1e-10) -> Optional[PureState]:
    """Pure-state view of a container, or None when the state is mixed"""
    if isinstance(state, PureState):
        return state
    if isinstance(state, DensityMatrix) and state.is_pure(tol):
        eig = hermitian_eig(state.matrix)
        vector = eig.eigenvectors[:, 0]
        return PureState.from_unnormalized(state.n, state.d, vector, label=state.label)
    return None
