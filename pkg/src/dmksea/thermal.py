"""Gibbs states exp(-H/T)/Z, temperature in energy units."""

from __future__ import annotations

import numpy as np

from .pauli_core import check_hermitian, hermitian_eig4


def _check_temperature(t: float) -> float:
    t = float(t)
    if not np.isfinite(t) or t <= 0.0:
        raise ValueError(f"temperature must be positive and finite, got {t}")
    return t


def boltzmann_weights(energies: np.ndarray, t: float) -> np.ndarray:
    """exp(-(E - E_min)/T); the shift keeps the largest weight at 1."""
    t = _check_temperature(t)
    e = np.asarray(energies, dtype=float)
    return np.exp(-(e - e.min()) / t)


def partition_function(h: np.ndarray, t: float) -> float:
    t = _check_temperature(t)
    w, _ = hermitian_eig4(check_hermitian(h))
    return float(np.exp(-w.min() / t) * boltzmann_weights(w, t).sum())


def gibbs(h: np.ndarray, t: float) -> np.ndarray:
    """Thermal density matrix of the Hamiltonian h at temperature t > 0."""
    t = _check_temperature(t)
    w, v = hermitian_eig4(check_hermitian(h))
    p = boltzmann_weights(w, t)
    p /= p.sum()
    rho = (v * p) @ v.conj().T
    return 0.5 * (rho + rho.conj().T)
