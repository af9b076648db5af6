"""
Hermitian eigensolvers - cyclic complex Jacobi and a LAPACK reference, behind one factory
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, NamedTuple, Optional

import numpy as np

from src.errors import NotHermitianError

logger = logging.getLogger(__name__)


class Eigendecomposition(NamedTuple):
    """Eigenvalues sorted descending; eigenvectors are the columns of `eigenvectors`"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


class BaseEigensolver(ABC):
    """Base class for Hermitian eigensolvers"""

    name = "base"

    @abstractmethod
    def decompose(self, h: np.ndarray) -> Eigendecomposition:
        pass

    @staticmethod
    def _sorted(eigenvalues: np.ndarray, eigenvectors: np.ndarray) -> Eigendecomposition:
        order = np.argsort(eigenvalues, kind="stable")[::-1]
        return Eigendecomposition(eigenvalues[order], eigenvectors[:, order])


class JacobiEigensolver(BaseEigensolver):
    """Cyclic Jacobi for complex Hermitian matrices.

    Each rotation first removes the phase of the pivot A[p, q] with a diagonal
    unitary, then applies the real symmetric Jacobi rotation to the 2x2 block.
    Sweeps stop once the off-diagonal Frobenius norm drops to tol * ||H||_F.
    """

    name = "jacobi"

    def __init__(self, tol: float = 1e-13, max_sweeps: int = 100):
        self.tol = tol
        self.max_sweeps = max_sweeps

    @staticmethod
    def _off_norm(a: np.ndarray) -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    def decompose(self, h: np.ndarray) -> Eigendecomposition:
        a = np.array(h, dtype=complex)
        dim = a.shape[0]
        v = np.eye(dim, dtype=complex)

        norm = float(np.linalg.norm(a))
        threshold = self.tol * norm
        if dim == 1 or norm == 0.0:
            return self._sorted(np.real(np.diag(a)).copy(), v)

        sweeps = 0
        while self._off_norm(a) > threshold:
            if sweeps >= self.max_sweeps:
                logger.warning(
                    f"Jacobi did not converge in {self.max_sweeps} sweeps "
                    f"(off-diagonal norm {self._off_norm(a):.3e})"
                )
                break
            sweeps += 1
            for p in range(dim - 1):
                for q in range(p + 1, dim):
                    self._rotate(a, v, p, q)

        logger.debug(f"Jacobi converged after {sweeps} sweeps for dim={dim}")
        return self._sorted(np.real(np.diag(a)).copy(), v)

    @staticmethod
    def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
        apq = a[p, q]
        magnitude = abs(apq)
        if magnitude < 1e-300:
            return

        phase = apq / magnitude
        app = a[p, p].real
        aqq = a[q, q].real
        tau = (aqq - app) / (2.0 * magnitude)
        if tau >= 0.0:
            t = 1.0 / (tau + np.hypot(1.0, tau))
        else:
            t = -1.0 / (-tau + np.hypot(1.0, tau))
        c = 1.0 / np.hypot(1.0, t)
        s = t * c

        # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) block
        jpp = c
        jpq = s
        jqp = -s * np.conj(phase)
        jqq = c * np.conj(phase)

        col_p = a[:, p].copy()
        col_q = a[:, q].copy()
        a[:, p] = col_p * jpp + col_q * jqp
        a[:, q] = col_p * jpq + col_q * jqq

        row_p = a[p, :].copy()
        row_q = a[q, :].copy()
        a[p, :] = np.conj(jpp) * row_p + np.conj(jqp) * row_q
        a[q, :] = np.conj(jpq) * row_p + np.conj(jqq) * row_q

        a[p, q] = 0.0
        a[q, p] = 0.0
        a[p, p] = a[p, p].real
        a[q, q] = a[q, q].real

        vec_p = v[:, p].copy()
        vec_q = v[:, q].copy()
        v[:, p] = vec_p * jpp + vec_q * jqp
        v[:, q] = vec_p * jpq + vec_q * jqq


class LapackEigensolver(BaseEigensolver):
    """numpy.linalg.eigh, kept as an independent reference"""

    name = "lapack"

    def decompose(self, h: np.ndarray) -> Eigendecomposition:
        w, v = np.linalg.eigh(np.asarray(h, dtype=complex))
        return self._sorted(w, v)


class EigensolverFactory:
    """Registry of available eigensolvers"""

    _solvers = {
        "jacobi": JacobiEigensolver,
        "lapack": LapackEigensolver,
    }

    @classmethod
    def create(cls, name: Optional[str] = None) -> BaseEigensolver:
        from config.settings import get_settings

        settings = get_settings()
        name = name or settings.eigensolver
        if name not in cls._solvers:
            available = ", ".join(cls._solvers.keys())
            raise ValueError(f"Unknown eigensolver: {name}. Available: {available}")
        if name == "jacobi":
            return JacobiEigensolver(tol=settings.jacobi_tol, max_sweeps=settings.jacobi_max_sweeps)
        return cls._solvers[name]()

    @classmethod
    def list_solvers(cls) -> Dict[str, type]:
        return dict(cls._solvers)


_default_solver: Optional[BaseEigensolver] = None


def get_eigensolver() -> BaseEigensolver:
    """Process-wide solver chosen by Settings.eigensolver"""
    global _default_solver
    if _default_solver is None:
        _default_solver = EigensolverFactory.create()
    return _default_solver


def set_eigensolver(name: Optional[str]) -> BaseEigensolver:
    """Switch the process-wide solver (None re-reads settings)"""
    global _default_solver
    _default_solver = EigensolverFactory.create(name)
    return _default_solver


def hermitian_eig(h: np.ndarray, tol: float = 1e-10,
                  solver: Optional[BaseEigensolver] = None) -> Eigendecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending"""
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"Expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.linalg.norm(h)))
    if not np.allclose(h, h.conj().T, rtol=0.0, atol=tol * scale):
        raise NotHermitianError("hermitian_eig requires a Hermitian input")
    return (solver or get_eigensolver()).decompose(h)
