"""The fifteen {E, U_ab} symmetry families of two-qubit Hamiltonians.

A family is labelled by a pair (a, b) over {0, x, y, z}, excluding (0, 0); its
members are the matrices commuting with U_ab = sigma_a (x) sigma_b. Every
family is spanned (besides the identity) by seven Pauli products, its
*support*, which is computed here from commutators rather than tabulated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .pauli_core import (
    PAULI_LABELS,
    bloch_compose,
    bloch_decompose,
    check_hermitian,
    pauli_index,
    pauli_product,
)

COMMUTE_RTOL = 1e-10

Pair = tuple[str, str]
FamilyParams = dict[Pair, float]


class Family(NamedTuple):
    first: str
    second: str

    @property
    def name(self) -> str:
        return self.first + self.second

    @property
    def is_inner(self) -> bool:
        """True for the nine families with both labels in {x, y, z}."""
        return self.first != "0" and self.second != "0"

    def __str__(self) -> str:
        return self.name


def family(spec: str | Iterable[str]) -> Family:
    """Parse 'zz', '0x', ('x', 'y') ... into a Family."""
    if isinstance(spec, Family):
        return spec
    chars = tuple(spec)
    if len(chars) != 2 or any(c not in PAULI_LABELS for c in chars):
        raise ValueError(f"invalid family {spec!r}: need two characters from '0xyz'")
    if chars == ("0", "0"):
        raise ValueError("family '00' (the trivial group) is excluded")
    return Family(*chars)


ALL_PAIRS: tuple[Pair, ...] = tuple(
    (a, b) for a, b in itertools.product(PAULI_LABELS, repeat=2) if (a, b) != ("0", "0")
)
ALL_FAMILIES: tuple[Family, ...] = tuple(Family(a, b) for a, b in ALL_PAIRS)
INNER_FAMILIES: tuple[Family, ...] = tuple(f for f in ALL_FAMILIES if f.is_inner)
OUTER_FAMILIES: tuple[Family, ...] = tuple(f for f in ALL_FAMILIES if not f.is_inner)


def pair_name(pair: Pair) -> str:
    return pair[0] + pair[1]


def u_operator(f: Family | str) -> np.ndarray:
    f = family(f)
    return pauli_product(f.first, f.second)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a @ b - b @ a))


def _compute_support(f: Family) -> tuple[Pair, ...]:
    u = u_operator(f)
    return tuple(p for p in ALL_PAIRS if commutator_norm(pauli_product(*p), u) == 0.0)


_SUPPORTS: dict[Family, tuple[Pair, ...]] = {f: _compute_support(f) for f in ALL_FAMILIES}


def support(f: Family | str) -> tuple[Pair, ...]:
    """The seven Pauli pairs spanning family f, in lexicographic 0 < x < y < z order."""
    return _SUPPORTS[family(f)]


def in_family(m: np.ndarray, f: Family | str, rtol: float = COMMUTE_RTOL) -> bool:
    m = np.asarray(m, dtype=complex)
    scale = max(float(np.linalg.norm(m)), 1.0)
    return commutator_norm(m, u_operator(f)) <= rtol * scale


def commuting_families(m: np.ndarray, rtol: float = COMMUTE_RTOL) -> list[Family]:
    """All families whose U operator commutes with M (Frobenius-relative tolerance)."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    return [f for f in ALL_FAMILIES if in_family(m, f, rtol)]


def _check_params(f: Family, p: Mapping[Pair, float]) -> FamilyParams:
    keys = set(p)
    expected = set(support(f))
    if keys != expected:
        missing = sorted(pair_name(k) for k in expected - keys)
        extra = sorted(pair_name(k) for k in keys - expected)
        raise ValueError(f"parameters do not match support of {f.name}: missing {missing}, unexpected {extra}")
    return {k: float(p[k]) for k in support(f)}


def family_params(f: Family | str, values: Mapping[str, float] | Iterable[float]) -> FamilyParams:
    """FamilyParams from either a sequence of seven values (support order) or a name-keyed map.

    >>> family_params("zz", {"z0": 1.0, "0z": 0.5, "xx": 0, "yy": 0, "zz": 2, "xy": 0, "yx": 0})[("z", "0")]
    1.0
    """
    f = family(f)
    sup = support(f)
    if isinstance(values, Mapping):
        return _check_params(f, {(k[0], k[1]): v for k, v in values.items()})
    vals = [float(v) for v in values]
    if len(vals) != len(sup):
        raise ValueError(f"family {f.name} takes {len(sup)} parameters, got {len(vals)}")
    return dict(zip(sup, vals))


def build_hamiltonian(f: Family | str, p: Mapping[Pair, float]) -> np.ndarray:
    f = family(f)
    params = _check_params(f, p)
    h = np.zeros((4, 4))
    for (a, b), val in params.items():
        h[pauli_index(a), pauli_index(b)] = val
    return bloch_compose(h)


def params_from_matrix(f: Family | str, m: np.ndarray) -> FamilyParams:
    """Read the support coefficients of a family member (raises if M is outside f)."""
    f = family(f)
    h = bloch_decompose(m)
    if not in_family(m, f):
        raise ValueError(f"matrix does not commute with U_{f.name}")
    return {p: float(h[pauli_index(p[0]), pauli_index(p[1])]) for p in support(f)}


@dataclass(frozen=True)
class CouplingSet:
    """Fields B1, B2, exchange J, DM vector D and KSEA components G (Gamma), energy units."""

    B1: tuple[float, float, float] = (0.0, 0.0, 0.0)
    B2: tuple[float, float, float] = (0.0, 0.0, 0.0)
    J: tuple[float, float, float] = (0.0, 0.0, 0.0)
    D: tuple[float, float, float] = (0.0, 0.0, 0.0)
    G: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for fld in fields(self):
            vals = tuple(float(v) for v in getattr(self, fld.name))
            if len(vals) != 3 or not all(np.isfinite(vals)):
                raise ValueError(f"{fld.name} must be three finite reals, got {vals}")
            object.__setattr__(self, fld.name, vals)

    KEYS = tuple(f"{g}{c}" for g in ("B1", "B2", "J", "D", "G") for c in "xyz")

    @classmethod
    def from_mapping(cls, values: Mapping[str, float]) -> CouplingSet:
        """Build from flat keys B1x ... Gz; missing keys default to zero."""
        unknown = [k for k in values if k not in cls.KEYS]
        if unknown:
            raise KeyError(f"unknown coupling key(s): {', '.join(unknown)}")
        groups = {g: tuple(float(values.get(g + c, 0.0)) for c in "xyz") for g in ("B1", "B2", "J", "D", "G")}
        return cls(**groups)

    def as_dict(self) -> dict[str, float]:
        return {f"{g}{c}": getattr(self, g)[i] for g in ("B1", "B2", "J", "D", "G") for i, c in enumerate("xyz")}

    def replace(self, **flat: float) -> CouplingSet:
        d = self.as_dict()
        for k, v in flat.items():
            if k not in d:
                raise KeyError(f"unknown coupling key: {k}")
            d[k] = v
        return CouplingSet.from_mapping(d)

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(abs(v) <= atol for v in self.as_dict().values())


def cross_couplings(d: Iterable[float], g: Iterable[float]) -> dict[str, float]:
    """Coefficients of the six off-diagonal products sigma_1^a sigma_2^b from DM and KSEA terms."""
    dx, dy, dz = (float(v) for v in d)
    gx, gy, gz = (float(v) for v in g)
    return {
        "yz": gx + dx,
        "zy": gx - dx,
        "zx": gy + dy,
        "xz": gy - dy,
        "xy": gz + dz,
        "yx": gz - dz,
    }


def dm_ksea(cross: Mapping[str, float]) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    """Inverse of cross_couplings: (D, Gamma) from the six cross coefficients."""
    d = (
        0.5 * (cross["yz"] - cross["zy"]),
        0.5 * (cross["zx"] - cross["xz"]),
        0.5 * (cross["xy"] - cross["yx"]),
    )
    g = (
        0.5 * (cross["yz"] + cross["zy"]),
        0.5 * (cross["zx"] + cross["xz"]),
        0.5 * (cross["xy"] + cross["yx"]),
    )
    return d, g


def coupling_bloch(c: CouplingSet) -> np.ndarray:
    """The 4x4 Pauli vector of the full Hamiltonian with couplings c."""
    h = np.zeros((4, 4))
    for i in range(3):
        h[i + 1, 0] = c.B1[i]
        h[0, i + 1] = c.B2[i]
        h[i + 1, i + 1] = c.J[i]
    for name, val in cross_couplings(c.D, c.G).items():
        h[pauli_index(name[0]), pauli_index(name[1])] = val
    return h


def couplings_from_bloch(h: np.ndarray) -> CouplingSet:
    """Inverse of coupling_bloch for a traceless Pauli vector."""
    h = np.asarray(h, dtype=float)
    cross = {a + b: h[pauli_index(a), pauli_index(b)] for a, b in itertools.permutations("xyz", 2)}
    d, g = dm_ksea(cross)
    return CouplingSet(
        B1=tuple(h[1:, 0]),
        B2=tuple(h[0, 1:]),
        J=tuple(np.diag(h)[1:]),
        D=d,
        G=g,
    )


def full_hamiltonian(c: CouplingSet) -> np.ndarray:
    """Zeeman + XYZ Heisenberg + DM + KSEA two-qubit Hamiltonian."""
    return bloch_compose(coupling_bloch(c))


def physical_projection(c: CouplingSet, f: Family | str) -> tuple[FamilyParams, CouplingSet]:
    """Split couplings into the part supported by family f and the dropped remainder.

    The remainder is zero exactly when the Hamiltonian already lies in f.
    """
    f = family(f)
    h = coupling_bloch(c)
    params: FamilyParams = {}
    for a, b in support(f):
        i, j = pauli_index(a), pauli_index(b)
        params[(a, b)] = float(h[i, j])
        h[i, j] = 0.0
    return params, couplings_from_bloch(h)


def check_family_member(m: np.ndarray, f: Family | str) -> np.ndarray:
    m = check_hermitian(m)
    f = family(f)
    if not in_family(m, f):
        resid = commutator_norm(m, u_operator(f))
        raise ValueError(f"matrix is not in family {f.name}: ||[M, U]||_F = {resid:.3e}")
    return m
