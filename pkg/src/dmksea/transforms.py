"""Local unitary reductions between families, the qubit swap, and block diagonalization."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .families import (
    Family,
    FamilyParams,
    Pair,
    _check_params,
    check_family_member,
    commutator_norm,
    family,
    in_family,
    support,
    u_operator,
)
from .pauli_core import eig2_closed, kron, pauli_product
from .xstate import XParams

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def hadamard() -> np.ndarray:
    return _SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex)


def y_transform() -> np.ndarray:
    """Y gate: columns are the +1 and -1 eigenvectors of sigma_y."""
    return _SQRT_HALF * np.array([[1, 1], [1j, -1j]], dtype=complex)


def y_tilde() -> np.ndarray:
    return _SQRT_HALF * np.array([[1, 1j], [1j, 1]], dtype=complex)


def swap_operator() -> np.ndarray:
    """Dirac exchange operator (1 + sigma_1 . sigma_2) / 2."""
    p = np.eye(4, dtype=complex)
    for a in "xyz":
        p = p + pauli_product(a, a)
    return 0.5 * p


GATES = {
    "σ0": lambda: np.eye(2, dtype=complex),
    "H": hadamard,
    "Y": y_transform,
    "Ỹ": y_tilde,
}

# V^H sigma_a V = sign * sigma_b for each named gate, as (sign, b)
PAULI_MAPS: dict[str, dict[str, tuple[int, str]]] = {
    "σ0": {"0": (1, "0"), "x": (1, "x"), "y": (1, "y"), "z": (1, "z")},
    "H": {"0": (1, "0"), "x": (1, "z"), "y": (-1, "y"), "z": (1, "x")},
    "Y": {"0": (1, "0"), "x": (1, "y"), "y": (1, "z"), "z": (1, "x")},
    "Ỹ": {"0": (1, "0"), "x": (1, "x"), "y": (1, "z"), "z": (-1, "y")},
}


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """Product gate gate1 (x) gate2, with printable names for each factor."""

    gate1: np.ndarray
    gate2: np.ndarray
    label1: str = field(default="U1")
    label2: str = field(default="U2")

    @classmethod
    def named(cls, name1: str, name2: str) -> LocalUnitary:
        return cls(GATES[name1](), GATES[name2](), name1, name2)

    @classmethod
    def identity(cls) -> LocalUnitary:
        return cls.named("σ0", "σ0")

    @property
    def matrix(self) -> np.ndarray:
        return kron(self.gate1, self.gate2)

    @property
    def label(self) -> str:
        return f"{self.label1}⊗{self.label2}"

    def is_unitary(self, atol: float = 1e-12) -> bool:
        eye = np.eye(2)
        return all(np.allclose(g.conj().T @ g, eye, rtol=0, atol=atol) for g in (self.gate1, self.gate2))

    def __repr__(self) -> str:
        return f"LocalUnitary({self.label})"


def conjugate(m: np.ndarray, u: LocalUnitary) -> np.ndarray:
    """(U1 (x) U2)^H M (U1 (x) U2)."""
    v = u.matrix
    return v.conj().T @ np.asarray(m, dtype=complex) @ v


def canonical_target(f: Family | str) -> Family:
    f = family(f)
    if f.is_inner:
        return Family("z", "z")
    if f.first == "0":
        return Family("0", "z")
    return Family("z", "0")


def _gate_for(label: str, y_gate: str) -> str:
    return {"0": "σ0", "z": "σ0", "x": "H", "y": y_gate}[label]


def canonicalizer(f: Family | str, y_gate: str = "Y") -> LocalUnitary:
    """Local gate V1 (x) V2 taking family f onto zz, 0z or z0 by conjugation.

    V is the identity for labels 0 and z, the Hadamard for x and the Y gate
    (or Y-tilde) for y.
    """
    if y_gate not in ("Y", "Ỹ"):
        raise ValueError(f"y_gate must be 'Y' or 'Ỹ', got {y_gate!r}")
    f = family(f)
    return LocalUnitary.named(_gate_for(f.first, y_gate), _gate_for(f.second, y_gate))


def _map_pair(pair: Pair, g1: str, g2: str) -> tuple[int, Pair]:
    s1, a = PAULI_MAPS[g1][pair[0]]
    s2, b = PAULI_MAPS[g2][pair[1]]
    return s1 * s2, (a, b)


def remap_parameters(f: Family | str, p: Mapping[Pair, float], y_gate: str = "Y") -> FamilyParams:
    """Parameters of the canonicalized Hamiltonian, keyed by the target family's support."""
    f = family(f)
    params = _check_params(f, p)
    g1, g2 = _gate_for(f.first, y_gate), _gate_for(f.second, y_gate)
    target = canonical_target(f)
    out = {}
    for pair, val in params.items():
        sign, new = _map_pair(pair, g1, g2)
        out[new] = sign * val
    return _check_params(target, out)


def unmap_parameters(f: Family | str, canonical: Mapping[Pair, float], y_gate: str = "Y") -> FamilyParams:
    """Inverse of remap_parameters: family-f parameters whose canonical image is given."""
    f = family(f)
    target = canonical_target(f)
    canon = _check_params(target, canonical)
    g1, g2 = _gate_for(f.first, y_gate), _gate_for(f.second, y_gate)
    out = {}
    for pair in support(f):
        sign, new = _map_pair(pair, g1, g2)
        out[pair] = sign * canon[new]
    return out


_R = _SQRT_HALF * np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1]], dtype=complex)
_S = _SQRT_HALF * np.array([[-1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, 1]], dtype=complex)

# column phases fixed to the classical R and S; R also falls out of the generic rule
_PINNED = {Family("x", "x"): _R, Family("y", "y"): _S}


def _eigen_columns(u: np.ndarray, sign: int, seeds: tuple[int, ...]) -> list[np.ndarray]:
    proj = 0.5 * (np.eye(4) + sign * u)
    cols: list[np.ndarray] = []
    for k in seeds:
        vec = proj[:, k]
        norm = np.linalg.norm(vec)
        if norm < 0.1:
            continue
        vec = vec / norm
        if any(abs(np.vdot(c, vec)) > 0.5 for c in cols):
            continue
        cols.append(vec)
    return cols


def quasidiag_transform(f: Family | str) -> np.ndarray:
    """Unitary whose columns are eigenvectors of U_f, the +1 eigenspace first.

    Each column is the projection of a basis vector onto an eigenspace; the
    -1 space is seeded in the order 1, 0, 3, 2 so that xx reproduces the
    classical R. The yy transform is the classical S.
    """
    f = family(f)
    if f in _PINNED:
        return _PINNED[f].copy()
    u = u_operator(f)
    cols = _eigen_columns(u, +1, (0, 1, 2, 3)) + _eigen_columns(u, -1, (1, 0, 3, 2))
    assert len(cols) == 4
    return np.column_stack(cols)


@dataclass(frozen=True, eq=False)
class BlockPair:
    top: np.ndarray
    bottom: np.ndarray
    off_block: float = 0.0

    def assemble(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=complex)
        m[:2, :2] = self.top
        m[2:, 2:] = self.bottom
        return m


def quasidiagonalize(m: np.ndarray, f: Family | str) -> BlockPair:
    f = family(f)
    m = np.asarray(m, dtype=complex)
    if not in_family(m, f):
        resid = commutator_norm(m, u_operator(f))
        raise ValueError(f"matrix is not in family {f.name}: ||[M, U]||_F = {resid:.3e}")
    t = quasidiag_transform(f)
    a = t.conj().T @ m @ t
    off = float(np.linalg.norm(a[:2, 2:]) + np.linalg.norm(a[2:, :2]))
    return BlockPair(a[:2, :2].copy(), a[2:, 2:].copy(), off)


def family_spectrum(m: np.ndarray, f: Family | str) -> np.ndarray:
    """All four eigenvalues from the two 2x2 blocks, by square radicals."""
    m = check_family_member(m, f)
    blocks = quasidiagonalize(m, f)
    return np.sort(np.array(eig2_closed(blocks.top) + eig2_closed(blocks.bottom)))


def reduce_to_x(rho: np.ndarray, f: Family | str, y_gate: str = "Y") -> tuple[XParams, LocalUnitary]:
    """X parameters of rho after conjugation by the family canonicalizer."""
    f = family(f)
    if not f.is_inner:
        raise ValueError(f"family {f.name} has a 0 label and cannot be reduced to an X state")
    rho = check_family_member(rho, f)
    u = canonicalizer(f, y_gate)
    return XParams.from_matrix(conjugate(rho, u)), u


def phase_gate(angle: float) -> np.ndarray:
    return np.diag([1.0, cmath.exp(1j * angle)])


def phase_normalize_x(x: XParams) -> tuple[XParams, LocalUnitary]:
    """Local diagonal phases making u and v real and non-negative."""
    arg_u = cmath.phase(x.u) if x.u != 0 else 0.0
    arg_v = cmath.phase(x.v) if x.v != 0 else 0.0
    alpha = -0.5 * (arg_u + arg_v)
    beta = 0.5 * (arg_v - arg_u)
    lu = LocalUnitary(phase_gate(alpha), phase_gate(beta), f"P({alpha:.6g})", f"P({beta:.6g})")
    return XParams(x.a, x.b, x.c, x.d, abs(x.u), abs(x.v)), lu

