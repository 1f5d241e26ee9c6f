"""Pair reduction and Wootters concurrence for spin-1/2 clusters."""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError
from .geometry import MAX_SPINS

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_HARD_TOL = 1e-8

# sigma_y (x) sigma_y: flips both spins and conjugates amplitudes.
SPIN_FLIP_KERNEL = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class ConcurrenceBreakdown:
    """The four flip-operator eigenvalues (descending) and the derived measure.

    ``signed`` is lambda1 - lambda2 - lambda3 - lambda4 before clamping; the
    concurrence is its non-negative part. A negative ``signed`` says how far
    the state is from the entanglement threshold.
    """

    lambdas: tuple[float, float, float, float]
    signed: float
    concurrence: float


def _infer_n_spins(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim != 2 ** n or not 1 <= n <= MAX_SPINS:
        raise ValueError(f"density matrix dimension {dim} is not 2^N with N <= {MAX_SPINS}")
    return n


def partial_trace_pair(rho: np.ndarray, m: int, n: int) -> np.ndarray:
    """Reduced 4x4 density matrix of spins (m, n), basis |s_m s_n> with up before down."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    n_spins = _infer_n_spins(rho.shape[0])
    if n_spins < 2:
        raise ValueError("partial trace to a pair needs at least 2 spins")
    if not (1 <= m < n <= n_spins):
        raise ValueError(f"need 1 <= m < n <= {n_spins}, got ({m}, {n})")
    letters = string.ascii_lowercase
    row = list(letters[:n_spins])
    col = list(letters[:n_spins])
    col[m - 1] = letters[n_spins]
    col[n - 1] = letters[n_spins + 1]
    spec = "".join(row) + "".join(col) + "->" + row[m - 1] + row[n - 1] + col[m - 1] + col[n - 1]
    tensor = rho.reshape((2,) * (2 * n_spins))
    return np.einsum(spec, tensor).reshape(4, 4)


def spin_flip(rho_pair: np.ndarray) -> np.ndarray:
    """Spin-flipped companion state: conjugate amplitudes, flip both spins."""
    rho_pair = np.asarray(rho_pair, dtype=complex)
    if rho_pair.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho_pair.shape}")
    return SPIN_FLIP_KERNEL @ rho_pair.conj() @ SPIN_FLIP_KERNEL


def _validate_pair_density(rho: np.ndarray) -> np.ndarray:
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 pair density matrix, got shape {rho.shape}")
    dev = np.abs(rho - rho.conj().T).max()
    if dev > HERMITIAN_TOL:
        raise ContractViolationError(f"pair density not Hermitian (deviation {dev:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ContractViolationError(f"pair density trace is {tr:.15g}, expected 1")
    return 0.5 * (rho + rho.conj().T)


def concurrence(rho_pair: np.ndarray) -> ConcurrenceBreakdown:
    """Wootters concurrence of a two-spin density matrix.

    The four flip-operator eigenvalues are computed as the singular values of
    sqrt(rho) @ sqrt(rho_flipped). This factored form is exactly the spectrum
    of the usual Hermitian product, but it never squares the matrix, so
    eigenvalues near the noise floor keep full absolute precision instead of
    being amplified to sqrt(machine epsilon).
    """
    rho = _validate_pair_density(np.asarray(rho_pair, dtype=complex))
    evals, evecs = np.linalg.eigh(rho)
    if evals.min() < -PSD_HARD_TOL:
        raise ContractViolationError(f"pair density not PSD (min eigenvalue {evals.min():.3e})")
    root = np.sqrt(np.clip(evals, 0.0, None))
    sqrt_rho = (evecs * root) @ evecs.conj().T
    # sqrt commutes with the flip transform, so this is sqrt of the flipped state.
    sqrt_flipped = SPIN_FLIP_KERNEL @ sqrt_rho.conj() @ SPIN_FLIP_KERNEL
    lams = np.linalg.svd(sqrt_rho @ sqrt_flipped, compute_uv=False)
    signed = float(lams[0] - lams[1] - lams[2] - lams[3])
    return ConcurrenceBreakdown(
        lambdas=tuple(float(v) for v in lams),
        signed=signed,
        concurrence=max(0.0, signed),
    )


def pair_concurrence(rho: np.ndarray, m: int, n: int) -> ConcurrenceBreakdown:
    """Concurrence between spins m and n of an N-spin density matrix."""
    return concurrence(partial_trace_pair(rho, m, n))
