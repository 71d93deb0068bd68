"""Two-qubit matrix algebra: Pauli basis, Bloch decomposition, small Hermitian eigensolvers."""

from __future__ import annotations

import enum
import math
from typing import Callable, NamedTuple

import numpy as np

PAULI_LABELS = "0xyz"
HERMITIAN_RTOL = 1e-12
# off-diagonal entries this far below rounding level are dropped without a rotation
_NEGLIGIBLE = 1e-30

_PAULIS = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _p in _PAULIS:
    _p.setflags(write=False)

# all sixteen sigma_a (x) sigma_b, indexed [a, b]
_PAULI_PRODUCTS = np.array([[np.kron(a, b) for b in _PAULIS] for a in _PAULIS])
_PAULI_PRODUCTS.setflags(write=False)


class Side(enum.Enum):
    """Which qubit an operation acts on (measures, keeps, ...)."""

    FIRST = "first"
    SECOND = "second"


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def pauli_index(label: str | int) -> int:
    if isinstance(label, (int, np.integer)):
        if 0 <= label < 4:
            return int(label)
        raise ValueError(f"Pauli index out of range: {label}")
    try:
        return PAULI_LABELS.index(label)
    except ValueError:
        raise ValueError(f"unknown Pauli label {label!r}; expected one of '0xyz'") from None


def pauli(label: str | int) -> np.ndarray:
    """Standard-representation Pauli matrix for label in {0, x, y, z}."""
    return _PAULIS[pauli_index(label)].copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def pauli_product(first: str | int, second: str | int) -> np.ndarray:
    return _PAULI_PRODUCTS[pauli_index(first), pauli_index(second)].copy()


def is_hermitian(m: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    m = np.asarray(m)
    scale = max(np.linalg.norm(m), 1.0)
    return bool(np.linalg.norm(m - m.conj().T) <= rtol * scale)


def check_hermitian(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not is_hermitian(m):
        resid = np.linalg.norm(m - m.conj().T)
        raise ValueError(f"{name} is not Hermitian (||M - M^H||_F = {resid:.3e})")
    return m


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    u = np.asarray(u)
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0, atol=atol))


def bloch_decompose(m: np.ndarray) -> np.ndarray:
    """Real coefficients h[a, b] with M = sum h[a, b] sigma_a (x) sigma_b.

    Rows and columns are ordered 0, x, y, z. For a density matrix h[0, 0] = 1/4
    and the usual correlation functions are 4 h.
    """
    m = check_hermitian(m, "bloch_decompose input")
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
    # Tr[M P] = sum_ij M_ij P_ji
    h = np.einsum("ij,abji->ab", m, _PAULI_PRODUCTS) / 4.0
    return h.real.copy()


def bloch_compose(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.shape != (4, 4):
        raise ValueError(f"Pauli vector must be 4x4, got {h.shape}")
    return np.einsum("ab,abij->ij", h, _PAULI_PRODUCTS)


def eig2_closed(m: np.ndarray) -> tuple[float, float]:
    """Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.

    Uses the discriminant in the form (a - d)^2 + 4|b|^2, which equals
    tr^2 - 4 det but cannot go negative and keeps near-degenerate pairs
    accurate.
    """
    m = np.asarray(m, dtype=complex)
    a = m[0, 0].real
    d = m[1, 1].real
    b = 0.5 * (m[0, 1] + m[1, 0].conjugate())
    mean = 0.5 * (a + d)
    half = math.hypot(0.5 * (a - d), abs(b))
    return mean - half, mean + half


def _jacobi_rotation(a: np.ndarray, p: int, q: int) -> np.ndarray:
    """2x2 block of the unitary U (identity outside p, q) with (U^H A U)[p, q] = 0."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    # diag(1, conj(phase)) makes the pivot real, then a real Givens rotation
    return np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])


def hermitian_eig4(m: np.ndarray, max_sweeps: int = 50) -> Spectrum:
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix (sized for 4x4).

    Returns eigenvalues ascending and orthonormal eigenvectors as columns.
    """
    a = check_hermitian(m, "hermitian_eig4 input").copy()
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return Spectrum(np.zeros(n), v)
    tol = (np.finfo(float).eps * scale) ** 2
    for _ in range(max_sweeps):
        off = np.sum(np.abs(a[~np.eye(n, dtype=bool)]) ** 2)
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= _NEGLIGIBLE * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                u = _jacobi_rotation(a, p, q)
                idx = [p, q]
                # only rows/columns p, q change; untouched entries keep their exact values
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ u
    else:
        raise RuntimeError("Jacobi eigensolver did not converge")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order])


def matrix_function(m: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """V f(L) V^H for Hermitian M = V L V^H; f is applied elementwise to the spectrum."""
    w, v = hermitian_eig4(m)
    with np.errstate(all="raise"):
        try:
            fw = np.asarray(f(w), dtype=complex)
        except (FloatingPointError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"function undefined on spectrum {w}: {exc}") from exc
    if fw.shape != w.shape or not np.all(np.isfinite(fw)):
        raise ValueError(f"function undefined on spectrum {w}")
    out = (v * fw) @ v.conj().T
    if np.all(fw.imag == 0):
        out = 0.5 * (out + out.conj().T)
    return out


def partial_trace(rho: np.ndarray, keep: Side) -> np.ndarray:
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep is Side.FIRST:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second qubit's index pair."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return r.transpose(0, 3, 2, 1).reshape(4, 4).copy()
