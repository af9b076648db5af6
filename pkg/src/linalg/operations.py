"""
Dense complex matrix operations on numpy arrays
"""

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from src.errors import DimensionMismatchError, NotPSDError
from .eigensolvers import hermitian_eig

DEFAULT_TOL = 1e-10


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])), initial=0.0) <= tol)


def is_psd(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    if not is_hermitian(m, tol):
        return False
    return bool(hermitian_eig(m).eigenvalues[-1] >= -tol)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def tensor_product_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every site not in `keep` (0-based site indices, order of kept sites preserved)"""
    rho = np.asarray(rho)
    dims = [int(x) for x in dims]
    keep = sorted(set(int(s) for s in keep))
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise DimensionMismatchError(
            f"Site dimensions {dims} imply a {total}x{total} matrix, got {rho.shape}"
        )
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionMismatchError(f"Invalid kept sites {keep} for {len(dims)} sites")

    n = len(dims)
    tensor = rho.reshape(dims + dims)
    current = n
    for site in sorted(set(range(n)) - set(keep), reverse=True):
        tensor = np.trace(tensor, axis1=site, axis2=site + current)
        current -= 1

    kept_dim = int(np.prod([dims[s] for s in keep]))
    return tensor.reshape(kept_dim, kept_dim)


def exp_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """U = exp(-i t h) through the eigendecomposition of h"""
    eig = hermitian_eig(h)
    v = eig.eigenvectors
    return (v * np.exp(-1j * t * eig.eigenvalues)) @ v.conj().T


def psd_sqrt(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Square root of a PSD matrix; eigenvalues in (-tol, 0) are clamped to zero"""
    eig = hermitian_eig(m, tol=tol)
    lowest = float(eig.eigenvalues[-1])
    if lowest < -tol:
        raise NotPSDError(f"Matrix is not PSD: smallest eigenvalue {lowest:.3e}")
    roots = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    v = eig.eigenvectors
    return (v * roots) @ v.conj().T


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR factorisation of a Ginibre matrix with phase-fixed R"""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def apply_local(psi_tensor: np.ndarray, op: np.ndarray, site: int) -> np.ndarray:
    """Apply a single-site operator to a state stored as an n-axis tensor"""
    moved = np.tensordot(op, psi_tensor, axes=([1], [site]))
    return np.moveaxis(moved, 0, site)
