"""Equilibrium density matrices at arbitrary inverse temperature.

Negative beta is an ordinary input here: the spin spectrum is bounded, so
exp(-beta * H) is normalizable for either sign, with beta < 0 weighting the
upper end of the spectrum.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BetaRangeError, ContractViolationError
from .operators import PSD_CLAMP_TOL, hermitian_eigensystem

# Guard against absurd exponent spans rather than genuine overflow: the
# spectrum is shifted before exponentiation, so the largest exponent is
# always 0 and huge |beta| merely underflows the subdominant weights.
BETA_SPAN_LIMIT = 1e5

_DEGENERACY_RTOL = 1e-9


def gibbs_state(hamiltonian: np.ndarray, beta: float) -> np.ndarray:
    """Thermal state exp(-beta H) / Tr exp(-beta H), stable at large |beta|.

    The spectrum is shifted by its beta-relevant extremum before
    exponentiation so the dominant weight is exactly 1 and nothing can
    overflow; tiny weights underflow harmlessly to zero.
    """
    if not math.isfinite(beta):
        raise ValueError("beta must be finite; use limit_state for the beta -> +/-inf projectors")
    evals, evecs = hermitian_eigensystem(hamiltonian)
    span = float(evals[-1] - evals[0])
    if abs(beta) * span > BETA_SPAN_LIMIT:
        raise BetaRangeError(
            f"|beta| * spectral_range = {abs(beta) * span:.3e} exceeds {BETA_SPAN_LIMIT:.0e}; "
            "use limit_state for the infinite-|beta| projector"
        )
    exponents = -beta * evals
    weights = np.exp(exponents - exponents.max())
    weights /= weights.sum()
    rho = (evecs * weights) @ evecs.conj().T
    return 0.5 * (rho + rho.conj().T)


def limit_state(hamiltonian: np.ndarray, sign: float) -> np.ndarray:
    """Normalized projector reached as beta -> sign * infinity.

    sign = +inf selects the lowest eigenvalue's eigenspace (cold limit),
    sign = -inf the highest one (the negative-temperature limit, where the
    population sits in the top of the spectrum).
    """
    if not (math.isinf(sign)):
        raise ValueError("sign must be +inf or -inf")
    evals, evecs = hermitian_eigensystem(hamiltonian)
    target = float(evals[0]) if sign > 0 else float(evals[-1])
    span = float(evals[-1] - evals[0])
    tol = _DEGENERACY_RTOL * max(1.0, span)
    selected = np.abs(evals - target) <= tol
    block = evecs[:, selected]
    rho = (block @ block.conj().T) / int(selected.sum())
    return 0.5 * (rho + rho.conj().T)


def validate_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                            psd_tol: float = PSD_CLAMP_TOL) -> None:
    """Raise unless rho is Hermitian, unit trace, and PSD within tolerances."""
    dev = np.abs(rho - rho.conj().T).max()
    if dev > herm_tol:
        raise ContractViolationError(f"density matrix not Hermitian (deviation {dev:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ContractViolationError(f"density matrix trace is {tr:.15g}, expected 1")
    emin = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if emin < -psd_tol:
        raise ContractViolationError(f"density matrix not PSD (min eigenvalue {emin:.3e})")
