"""Shared test utilities and independent oracles.

Everything here is deliberately written from scratch (basis loops, closed
forms, series expansions) so the oracles never share code with the package
paths they check.
"""

import numpy as np

UP = np.array([1.0, 0.0], dtype=complex)
DOWN = np.array([0.0, 1.0], dtype=complex)

# sigma_y tensor sigma_y, written out by hand.
FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


def product_ket(bits):
    """|b1 b2 ... bN> with 0 = up, 1 = down, site 1 leftmost."""
    vec = np.array([1.0], dtype=complex)
    for b in bits:
        vec = np.kron(vec, DOWN if b else UP)
    return vec


def dm(vec):
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def random_density(rng, dim, rank=None):
    """Random mixed state from a Wishart-style construction."""
    rank = rank or dim
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim=2):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def loop_partial_trace_pair(rho, m, n, n_spins):
    """Brute-force reduced pair matrix using explicit basis sums."""
    keep = (m - 1, n - 1)
    others = [k for k in range(n_spins) if k not in keep]
    out = np.zeros((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            for rest in range(2 ** len(others)):
                row_bits = [0] * n_spins
                col_bits = [0] * n_spins
                row_bits[keep[0]], row_bits[keep[1]] = (a >> 1) & 1, a & 1
                col_bits[keep[0]], col_bits[keep[1]] = (b >> 1) & 1, b & 1
                for pos, site in enumerate(others):
                    bit = (rest >> pos) & 1
                    row_bits[site] = bit
                    col_bits[site] = bit
                i = int("".join(map(str, row_bits)), 2)
                j = int("".join(map(str, col_bits)), 2)
                out[a, b] += rho[i, j]
    return out


def xstate_concurrence(rho):
    """Closed-form concurrence for X-patterned two-qubit states."""
    inner = abs(rho[1, 2]) - np.sqrt(abs(rho[0, 0] * rho[3, 3]))
    outer = abs(rho[0, 3]) - np.sqrt(abs(rho[1, 1] * rho[2, 2]))
    return 2.0 * max(0.0, inner.real, outer.real)


def is_x_pattern(rho, tol=1e-12):
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = False
        mask[i, 3 - i] = False
    return np.abs(rho[mask]).max() <= tol


def rho_rho_tilde_lambdas(rho):
    """Flip-operator eigenvalues from the non-Hermitian product rho @ rho_tilde.

    Eigenvalues below the solver's resolution (machine epsilon times the
    product's scale) are indistinguishable from zero and are clamped, since
    taking their square root would otherwise inflate pure noise.
    """
    tilde = FLIP @ rho.conj() @ FLIP
    evals = np.linalg.eigvals(rho @ tilde).real
    floor = 4.0 * np.finfo(float).eps * max(evals.max(), 0.0)
    evals[evals < floor] = 0.0
    return np.sort(np.sqrt(evals))[::-1]


def series_expm(matrix, terms=30):
    """Plain truncated Taylor series for the matrix exponential."""
    out = np.eye(matrix.shape[0], dtype=complex)
    power = np.eye(matrix.shape[0], dtype=complex)
    fact = 1.0
    for k in range(1, terms + 1):
        power = power @ matrix
        fact *= k
        out = out + power / fact
    return out
