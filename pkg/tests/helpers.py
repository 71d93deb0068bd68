"""Random matrices and states shared by the test modules."""

from __future__ import annotations

import numpy as np

from dmksea.families import build_hamiltonian, family, support
from dmksea.xstate import XParams


def random_hermitian(rng: np.random.Generator, n: int = 4, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * 0.5 * (a + a.conj().T)


def random_density(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def generic_params(f, rng: np.random.Generator, lo: float = -2.0, hi: float = 2.0) -> dict:
    """Uniform family parameters, resampled until no two of the seven are within 1e-6."""
    f = family(f)
    while True:
        vals = rng.uniform(lo, hi, size=7)
        gaps = np.abs(vals[:, None] - vals[None, :])[np.triu_indices(7, 1)]
        if gaps.min() > 1e-6 and np.abs(vals).min() > 1e-6:
            return dict(zip(support(f), vals))


def random_member(f, rng: np.random.Generator, lo: float = -2.0, hi: float = 2.0) -> np.ndarray:
    return build_hamiltonian(f, generic_params(f, rng, lo, hi))


def random_x_state(rng: np.random.Generator) -> XParams:
    """Valid X state with complex coherences filling a random fraction of the allowed disc."""
    a, b, c, d = rng.dirichlet(np.ones(4))
    u = np.sqrt(a * d) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    v = np.sqrt(b * c) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return XParams(a, b, c, d, u, v)


def random_qubit_unitary(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def bell_phi_plus() -> np.ndarray:
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return np.outer(psi, psi.conj())
