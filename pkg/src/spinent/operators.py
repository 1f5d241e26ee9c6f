"""Dense spin-1/2 operator algebra on the 2^N product space."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .errors import ContractViolationError, DomainError
from .geometry import MAX_SPINS

HERMITIAN_TOL = 1e-12
PSD_CLAMP_TOL = 1e-10
PSD_HARD_TOL = 1e-8

SINGLE_SITE = {
    "x": np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex),
    "y": np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex),
    "z": np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex),
    "plus": np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
    "minus": np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex),
}


def spin_operator(n_spins: int, site: int, axis: str) -> np.ndarray:
    """Single-site spin operator embedded into the N-spin product space.

    Basis convention: product states |m1 m2 ... mN> with site 1 the leftmost
    (slowest-varying) Kronecker factor and spin-up ordered before spin-down.
    """
    if not 1 <= n_spins <= MAX_SPINS:
        raise ValueError(f"n_spins must be in [1, {MAX_SPINS}], got {n_spins}")
    if not 1 <= site <= n_spins:
        raise ValueError(f"site must be in [1, {n_spins}], got {site}")
    if axis not in SINGLE_SITE:
        raise ValueError(f"axis must be one of {sorted(SINGLE_SITE)}, got {axis!r}")
    op = SINGLE_SITE[axis]
    left = np.eye(2 ** (site - 1), dtype=complex)
    right = np.eye(2 ** (n_spins - site), dtype=complex)
    return np.kron(np.kron(left, op), right)


def is_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.abs(matrix - matrix.conj().T).max() <= tol)


def require_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL, what: str = "matrix") -> None:
    dev = np.abs(matrix - matrix.conj().T).max()
    if dev > tol:
        raise ContractViolationError(f"{what} is not Hermitian (max deviation {dev:.3e})")


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # orthonormal columns


def hermitian_eigensystem(matrix: np.ndarray) -> EigenSystem:
    """Full spectrum (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    m = np.asarray(matrix, dtype=complex)
    require_hermitian(m)
    evals, evecs = np.linalg.eigh(m)
    return EigenSystem(eigenvalues=evals, eigenvectors=evecs)


def matrix_function(matrix: np.ndarray, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum."""
    evals, evecs = hermitian_eigensystem(matrix)
    fvals = np.asarray(func(evals), dtype=float)
    out = (evecs * fvals) @ evecs.conj().T
    return 0.5 * (out + out.conj().T)


def psd_sqrt(matrix: np.ndarray, hard_tol: float = PSD_HARD_TOL) -> np.ndarray:
    """Square root of a positive-semidefinite Hermitian matrix.

    Eigenvalues down to -hard_tol are treated as rounding noise and clamped
    to zero; anything below that is a genuine domain violation.
    """
    evals, evecs = hermitian_eigensystem(matrix)
    if evals.min() < -hard_tol:
        raise DomainError(f"matrix is not PSD: min eigenvalue {evals.min():.3e}")
    root = np.sqrt(np.clip(evals, 0.0, None))
    out = (evecs * root) @ evecs.conj().T
    return 0.5 * (out + out.conj().T)
