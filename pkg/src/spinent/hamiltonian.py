"""Zeeman and dipolar Hamiltonians for spin clusters.

Energies are dimensionless: the dipolar coupling of a nearest-neighbor pair
sets the unit, so pair couplings scale as 1/r^3 with r in nearest-neighbor
units, and the field strength enters through the single ratio alpha.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .geometry import SpinCluster
from .operators import SINGLE_SITE


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless field strength and inverse spin temperature.

    alpha is the ratio of the Zeeman energy to the nearest-neighbor dipolar
    coupling (field magnitude; its sign lives in the field direction).
    beta is the inverse temperature in units of that coupling; beta < 0 is a
    legitimate equilibrium of the bounded spin spectrum.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")
        if self.alpha < 0:
            raise ValueError("alpha is a field magnitude and must be >= 0")


def _site_indices(n_spins: int, site: int) -> tuple[np.ndarray, np.ndarray]:
    # Basis indices grouped by the state of one site: bit position N - site
    # (site 1 is the most significant bit).
    bit = n_spins - site
    rest = np.arange(2 ** (n_spins - 1))
    hi = rest >> bit
    lo = rest & ((1 << bit) - 1)
    base = (hi << (bit + 1)) | lo
    return base, base | (1 << bit)


def _embed_site_term(h: np.ndarray, term: np.ndarray, site: int, n_spins: int) -> None:
    idx = _site_indices(n_spins, site)
    for a in range(2):
        for b in range(2):
            if term[a, b] != 0:
                h[idx[a], idx[b]] += term[a, b]


def _pair_indices(n_spins: int, m: int, n: int) -> list[np.ndarray]:
    # Indices grouped by the joint state (a_m, a_n), ordered like
    # kron(site m, site n): group index 2*a_m + a_n.
    bit_m = n_spins - m
    bit_n = n_spins - n
    rest = np.arange(2 ** (n_spins - 2))
    hi = rest >> bit_n
    lo = rest & ((1 << bit_n) - 1)
    base = (hi << (bit_n + 1)) | lo
    hi = base >> bit_m
    lo = base & ((1 << bit_m) - 1)
    base = (hi << (bit_m + 1)) | lo
    return [base | (a_m << bit_m) | (a_n << bit_n) for a_m in (0, 1) for a_n in (0, 1)]


def _embed_pair_term(h: np.ndarray, term: np.ndarray, m: int, n: int, n_spins: int) -> None:
    idx = _pair_indices(n_spins, m, n)
    for a in range(4):
        for b in range(4):
            if term[a, b] != 0:
                h[idx[a], idx[b]] += term[a, b]


def pair_coupling(r_vec) -> np.ndarray:
    """4x4 dipolar coupling of one spin pair separated by r_vec.

    Returns (I_a . I_b - 3 (I_a . rhat)(I_b . rhat)) / r^3 in the pair product
    basis, which makes the coupling of the full cluster a plain sum of
    embedded pair terms.
    """
    r_vec = np.asarray(r_vec, dtype=float)
    r = float(np.linalg.norm(r_vec))
    if r <= 0:
        raise ValueError("pair separation must be positive")
    unit = r_vec / r
    axes = [SINGLE_SITE[a] for a in ("x", "y", "z")]
    dot = sum(np.kron(s, s) for s in axes)
    proj = sum(unit[i] * axes[i] for i in range(3))
    return (dot - 3.0 * np.kron(proj, proj)) / r ** 3


def zeeman_hamiltonian(cluster: SpinCluster) -> np.ndarray:
    """Sum of single-site spin projections along the field direction (unit prefactor)."""
    n = cluster.n_spins
    axis = cluster.field_direction
    term = sum(axis[i] * SINGLE_SITE[a] for i, a in enumerate(("x", "y", "z")))
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for site in range(1, n + 1):
        _embed_site_term(h, term, site, n)
    return h


def dipolar_hamiltonian(cluster: SpinCluster) -> np.ndarray:
    """Full dipolar coupling over all pairs, including non-secular terms.

    The flip-flop and double-flip terms kept here are what mix the spin
    populations at zero and low field; no secular truncation is applied.
    """
    n = cluster.n_spins
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for m, k in cluster.pairs():
        r_vec = cluster.positions[k - 1] - cluster.positions[m - 1]
        _embed_pair_term(h, pair_coupling(r_vec), m, k, n)
    return h


def total_hamiltonian(cluster: SpinCluster, params: ModelParams) -> np.ndarray:
    """alpha * Zeeman + dipolar coupling."""
    h = dipolar_hamiltonian(cluster)
    if params.alpha != 0.0:
        h = h + params.alpha * zeeman_hamiltonian(cluster)
    return h
