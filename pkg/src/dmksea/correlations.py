"""Entanglement, quantum discord and one-way work deficit of two-qubit states.

All entropies are in bits. Discord and deficit are defined with rank-one
projective measurements on one qubit (the *measured side*); "second" is the
right discord.

The minimum over measurement directions is split into three branches, the
polar angle pinned at 0, pinned at pi/2, and an interior 1-D search. For
states that reduce to an X state (every inner family, after the canonical
local gate and a local phase fix) the azimuth can be set to zero, so the
whole search is one-dimensional. Other states fall back to a 2-D search.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.special import entr

from .families import commuting_families, in_family
from .optimize import golden_section
from .pauli_core import (
    Side,
    bloch_decompose,
    check_hermitian,
    eig2_closed,
    hermitian_eig4,
    partial_trace,
    partial_transpose,
    pauli,
    pauli_product,
)
from .transforms import phase_normalize_x, reduce_to_x
from .xstate import XParams

LN2 = math.log(2.0)
NEG_EIG_TOL = 1e-10
CLAMP_TOL = 1e-9
TIE_TOL = 1e-12
PPT_TOL = 1e-10
SCAN_POINTS = 64
BRENT_XTOL = 1e-9
ORACLE_GRID = 181

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class MeasurementAngles:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= HALF_PI):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2pi), got {self.phi}")

    @property
    def direction(self) -> np.ndarray:
        return direction(self.theta, self.phi)


def direction(theta, phi=0.0) -> np.ndarray:
    """Unit vector(s) (sin t cos p, sin t sin p, cos t); broadcasts over arrays."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack(np.broadcast_arrays(st * np.cos(phi), st * np.sin(phi), np.cos(theta)), axis=-1)


# --- entropies --------------------------------------------------------------


def _clean_spectrum(w: np.ndarray) -> np.ndarray:
    if np.min(w) < -NEG_EIG_TOL:
        raise ValueError(f"not positive semidefinite: eigenvalue {np.min(w):.3e}")
    return np.clip(w, 0.0, None)


def shannon_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(np.sum(entr(p)) / LN2)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-sum l log2 l over the spectrum of a 2x2 or 4x4 density matrix."""
    rho = check_hermitian(rho, "density matrix")
    if rho.shape == (2, 2):
        w = np.array(eig2_closed(rho))
    elif rho.shape == (4, 4):
        w = hermitian_eig4(rho).eigenvalues
    else:
        raise ValueError(f"expected a 2x2 or 4x4 density matrix, got {rho.shape}")
    return shannon_bits(_clean_spectrum(w))


def qubit_entropy(r) -> np.ndarray:
    """Entropy of a qubit state from the length of its Bloch vector."""
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    return (entr(0.5 * (1.0 + r)) + entr(0.5 * (1.0 - r))) / LN2


def check_density(rho: np.ndarray, tol: float = NEG_EIG_TOL) -> np.ndarray:
    rho = check_hermitian(rho, "density matrix")
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace is {tr}, not 1")
    lo = hermitian_eig4(rho).eigenvalues[0]
    if lo < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
    return rho


# --- entanglement -----------------------------------------------------------


def concurrence_x(x: XParams) -> float:
    """2 max(0, |u| - sqrt(bc), |v| - sqrt(ad))."""
    x.validate()
    return 2.0 * max(
        0.0,
        abs(x.u) - math.sqrt(max(x.b * x.c, 0.0)),
        abs(x.v) - math.sqrt(max(x.a * x.d, 0.0)),
    )


_SYSY = pauli_product("y", "y")


def concurrence_general(rho: np.ndarray) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    The square roots of the eigenvalues of rho (sy sy) rho* (sy sy) are taken
    as the singular values of X^T (sy sy) X with rho = X X^H, which avoids
    square-rooting eigenvalues that are zero up to rounding.
    """
    rho = check_density(rho)
    w, v = hermitian_eig4(rho)
    x = v * np.sqrt(_clean_spectrum(w))
    s = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def ppt_separable(rho: np.ndarray) -> tuple[bool, float]:
    """(min eigenvalue of the partial transpose >= -1e-10, that eigenvalue)."""
    rho = check_density(rho)
    lo = float(hermitian_eig4(partial_transpose(rho)).eigenvalues[0])
    return lo >= -PPT_TOL, lo


# --- measured entropies -----------------------------------------------------


def _projectors(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ns = n[0] * pauli("x") + n[1] * pauli("y") + n[2] * pauli("z")
    eye = np.eye(2)
    return 0.5 * (eye + ns), 0.5 * (eye - ns)


def _lift(p: np.ndarray, side: Side) -> np.ndarray:
    return np.kron(p, np.eye(2)) if side is Side.FIRST else np.kron(np.eye(2), p)


def _other(side: Side) -> Side:
    return Side.SECOND if side is Side.FIRST else Side.FIRST


def measured_conditional_entropy(rho: np.ndarray, side: Side, angles: MeasurementAngles) -> float:
    """sum_k p_k S(rho_other | k) for the two-outcome projective measurement along angles."""
    rho = check_density(rho)
    total = 0.0
    for proj in _projectors(angles.direction):
        big = _lift(proj, side)
        post = big @ rho @ big
        p = np.trace(post).real
        if p <= 0.0:
            continue
        cond = partial_trace(post, keep=_other(side)) / p
        total += p * von_neumann_entropy(0.5 * (cond + cond.conj().T))
    return total


def post_measurement_state(rho: np.ndarray, side: Side, angles: MeasurementAngles) -> np.ndarray:
    """sum_k Pi_k rho Pi_k with the projectors on the measured side."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for proj in _projectors(angles.direction):
        big = _lift(proj, side)
        out += big @ rho @ big
    return out


@dataclass(frozen=True, eq=False)
class _Functional:
    """Measured entropies of one state as vectorized functions of the direction n.

    Uses the Bloch form: outcome +/- has probability (1 +/- s.n)/2 and leaves
    the other qubit with Bloch vector (a +/- T n)/(1 +/- s.n), where s is the
    measured qubit's Bloch vector and T the correlation matrix oriented so
    that T n lives on the unmeasured qubit.
    """

    a: np.ndarray
    s: np.ndarray
    t: np.ndarray

    @classmethod
    def of(cls, rho: np.ndarray, side: Side) -> _Functional:
        r = 4.0 * bloch_decompose(rho)
        first, second, corr = r[1:, 0], r[0, 1:], r[1:, 1:]
        if side is Side.SECOND:
            return cls(first, second, corr)
        return cls(second, first, corr.T)

    def _terms(self, n: np.ndarray):
        sn = n @ self.s
        tn = n @ self.t.T
        out = []
        for sign in (1.0, -1.0):
            q = 1.0 + sign * sn
            p = 0.5 * q
            safe = np.where(q > 1e-300, q, 1.0)
            r = np.linalg.norm(self.a + sign * tn, axis=-1) / safe
            ent = np.where(q > 1e-300, qubit_entropy(r), 0.0)
            out.append((p, ent))
        return out

    def conditional(self, n: np.ndarray) -> np.ndarray:
        (pp, sp), (pm, sm) = self._terms(n)
        return pp * sp + pm * sm

    def post_entropy(self, n: np.ndarray) -> np.ndarray:
        (pp, sp), (pm, sm) = self._terms(n)
        return (entr(pp) + entr(pm)) / LN2 + pp * sp + pm * sm


# --- three-branch minimization ----------------------------------------------


@dataclass(frozen=True)
class BranchReport:
    value_at_0: float
    value_at_pi_half: float
    interior_value: float
    interior_theta: float
    winner: str
    route: str = "x"

    @property
    def minimum(self) -> float:
        return min(self.value_at_0, self.value_at_pi_half, self.interior_value)


def _pick_winner(v0: float, vpi: float, vint: float) -> str:
    lo = min(v0, vpi, vint)
    for name, val in (("zero", v0), ("pi_half", vpi), ("interior", vint)):
        if val - lo <= TIE_TOL:
            return name
    raise AssertionError("unreachable")


def _interior_scan_1d(g: Callable[[np.ndarray], np.ndarray]) -> tuple[float, float]:
    """Minimize g(theta) over the open interval (0, pi/2): grid scan then bounded Brent."""
    step = HALF_PI / SCAN_POINTS
    grid = (np.arange(SCAN_POINTS) + 0.5) * step
    vals = g(grid)
    k = int(np.argmin(vals))
    lo = max(grid[k] - step, 0.0)
    hi = min(grid[k] + step, HALF_PI)
    res = minimize_scalar(lambda t: float(g(np.array([t]))[0]), bounds=(lo, hi), method="bounded",
                          options={"xatol": BRENT_XTOL})
    if res.fun < vals[k]:
        return float(res.x), float(res.fun)
    return float(grid[k]), float(vals[k])


def _branches_1d(g: Callable[[np.ndarray], np.ndarray], offset: float) -> BranchReport:
    v0 = float(g(np.array([0.0]))[0])
    vpi = float(g(np.array([HALF_PI]))[0])
    th, vint = _interior_scan_1d(g)
    v0, vpi, vint = v0 + offset, vpi + offset, vint + offset
    return BranchReport(v0, vpi, vint, th, _pick_winner(v0, vpi, vint), route="x")


def _tangent_basis(n0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(n0[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(n0, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n0, e1)


def _sphere_min(f: Callable[[np.ndarray], np.ndarray], n0: np.ndarray) -> tuple[np.ndarray, float]:
    """Nelder-Mead in the tangent plane at n0; directions are renormalized, so no pole singularity."""
    e1, e2 = _tangent_basis(n0)

    def unit(xy):
        v = n0 + xy[0] * e1 + xy[1] * e2
        return v / np.linalg.norm(v)

    res = minimize(lambda xy: float(f(unit(xy)[None, :])[0]), np.zeros(2), method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-15, "initial_simplex": [[0, 0], [0.05, 0], [0, 0.05]],
                            "maxiter": 4000})
    return unit(res.x), float(res.fun)


def _fold(n: np.ndarray) -> np.ndarray:
    """n and -n give the same measurement; pick the upper hemisphere."""
    return -n if n[2] < 0 else n


def _branches_2d(f: Callable[[np.ndarray], np.ndarray], offset: float) -> BranchReport:
    v0 = float(f(np.array([[0.0, 0.0, 1.0]]))[0])

    # equator: periodic in phi with period pi
    phis = np.arange(SCAN_POINTS) * (math.pi / SCAN_POINTS)
    eq = f(direction(HALF_PI, phis))
    k = int(np.argmin(eq))
    h = math.pi / SCAN_POINTS
    res = minimize_scalar(lambda p: float(f(direction(HALF_PI, np.array([p])))[0]),
                          bounds=(phis[k] - h, phis[k] + h), method="bounded", options={"xatol": BRENT_XTOL})
    vpi = min(float(res.fun), float(eq[k]))

    nt, nphi = 24, 48
    th = (np.arange(nt) + 0.5) * (HALF_PI / nt)
    ph = np.arange(nphi) * (2.0 * math.pi / nphi)
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    dirs = direction(tt, pp).reshape(-1, 3)
    vals = f(dirs)
    starts = [dirs[i] for i in np.argsort(vals, kind="stable")[:4]]
    best_n, best_v = starts[0], float(np.min(vals))
    for n0 in starts:
        n, v = _sphere_min(f, n0)
        if v < best_v:
            best_n, best_v = n, v
    best_n = _fold(best_n)
    theta = float(math.acos(min(1.0, max(-1.0, best_n[2]))))
    v0, vpi, vint = v0 + offset, vpi + offset, best_v + offset
    return BranchReport(v0, vpi, vint, theta, _pick_winner(v0, vpi, vint), route="generic")


def _clamp(value: float, what: str) -> float:
    if value < -CLAMP_TOL:
        raise ValueError(f"{what} came out negative ({value:.3e}); input is not a valid state")
    return max(value, 0.0)


@dataclass(frozen=True, eq=False)
class _Prepared:
    """A state in the frame where the angle search runs, and how we got there."""

    rho: np.ndarray
    x_form: bool
    route: str


def prepare(rho: np.ndarray) -> _Prepared:
    """Move rho by local unitaries to a real non-negative X state when its family allows."""
    rho = check_density(rho)
    if in_family(rho, "zz"):
        x = XParams.from_matrix(rho)
        route = "x"
    else:
        inner = [f for f in commuting_families(rho) if f.is_inner]
        if not inner:
            return _Prepared(rho, False, "generic")
        x, _ = reduce_to_x(rho, inner[0])
        route = f"x via {inner[0].name}"
    xn, _ = phase_normalize_x(x)
    return _Prepared(xn.to_matrix(), True, route)


def _measure(rho: np.ndarray, side: Side, kind: str, prepared: _Prepared | None = None) -> tuple[float, BranchReport]:
    prep = prepared if prepared is not None else prepare(rho)
    fn = _Functional.of(prep.rho, side)
    s_total = von_neumann_entropy(prep.rho)
    if kind == "discord":
        offset = float(qubit_entropy(np.linalg.norm(fn.s))) - s_total
        func = fn.conditional
    else:
        offset = -s_total
        func = fn.post_entropy
    if prep.x_form:
        rep = _branches_1d(lambda th: func(direction(th, 0.0)), offset)
        rep = BranchReport(rep.value_at_0, rep.value_at_pi_half, rep.interior_value, rep.interior_theta,
                           rep.winner, prep.route)
    else:
        rep = _branches_2d(func, offset)
    return _clamp(rep.minimum, kind), rep


def discord(rho: np.ndarray, side: Side) -> tuple[float, BranchReport]:
    """Quantum discord (bits) with a projective measurement on `side`."""
    return _measure(rho, side, "discord")


def work_deficit(rho: np.ndarray, side: Side) -> tuple[float, BranchReport]:
    """One-way quantum work deficit (bits) for dephasing `side`."""
    return _measure(rho, side, "deficit")


# --- dense-grid oracles ------------------------------------------------------


def _grid_minimum(f: Callable[[np.ndarray], np.ndarray], grid: int) -> float:
    """Global minimum over a (theta, phi) grid followed by coordinate golden-section refinement."""
    thetas = np.linspace(0.0, HALF_PI, grid)
    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = f(direction(tt, pp))
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    th, ph, best = float(thetas[i]), float(phis[j]), float(vals[i, j])
    wt, wp = thetas[1] - thetas[0], phis[1] - phis[0]

    def at(t, p):
        return float(f(direction(t, p)[None, :])[0])

    for _ in range(200):
        start = best
        t_new, v = golden_section(lambda t: at(t, ph), th - wt, th + wt)
        if v < best:
            th, best = t_new, v
        p_new, v = golden_section(lambda p: at(th, p), ph - wp, ph + wp)
        if v < best:
            ph, best = p_new, v
        if start - best <= 1e-15:
            break
    return best


def discord_oracle(rho: np.ndarray, side: Side, grid: int = ORACLE_GRID) -> float:
    """Brute-force discord: dense angle grid on the untransformed state, no family shortcuts."""
    rho = check_density(rho)
    fn = _Functional.of(rho, side)
    marginal = partial_trace(rho, keep=side)
    value = von_neumann_entropy(marginal) - von_neumann_entropy(rho) + _grid_minimum(fn.conditional, grid)
    return _clamp(value, "discord")


def deficit_oracle(rho: np.ndarray, side: Side, grid: int = ORACLE_GRID) -> float:
    rho = check_density(rho)
    fn = _Functional.of(rho, side)
    value = _grid_minimum(fn.post_entropy, grid) - von_neumann_entropy(rho)
    return _clamp(value, "deficit")


# --- aggregate report ---------------------------------------------------------


@dataclass(frozen=True)
class CorrelationReport:
    concurrence: float
    discord_first: float
    discord_second: float
    deficit_first: float
    deficit_second: float
    ppt_separable: bool
    min_pt_eigenvalue: float
    branches: dict[str, BranchReport] = field(default_factory=dict)
    families: tuple[str, ...] = ()
    route: str = "generic"

    def measures(self) -> dict[str, float]:
        return {
            "concurrence": self.concurrence,
            "discord_first": self.discord_first,
            "discord_second": self.discord_second,
            "deficit_first": self.deficit_first,
            "deficit_second": self.deficit_second,
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["families"] = list(self.families)
        return d


def concurrence(rho: np.ndarray, prepared: _Prepared | None = None) -> float:
    """Concurrence by the X-state formula when rho reduces to an X state, Wootters otherwise."""
    prep = prepared if prepared is not None else prepare(rho)
    if prep.x_form:
        return concurrence_x(XParams.from_matrix(prep.rho))
    return concurrence_general(prep.rho)


def correlation_report(rho: np.ndarray) -> CorrelationReport:
    rho = check_density(rho)
    prep = prepare(rho)
    ppt, lo = ppt_separable(rho)
    q1, b_q1 = _measure(rho, Side.FIRST, "discord", prep)
    q2, b_q2 = _measure(rho, Side.SECOND, "discord", prep)
    d1, b_d1 = _measure(rho, Side.FIRST, "deficit", prep)
    d2, b_d2 = _measure(rho, Side.SECOND, "deficit", prep)
    return CorrelationReport(
        concurrence=concurrence(rho, prep),
        discord_first=q1,
        discord_second=q2,
        deficit_first=d1,
        deficit_second=d2,
        ppt_separable=ppt,
        min_pt_eigenvalue=lo,
        branches={"discord_first": b_q1, "discord_second": b_q2, "deficit_first": b_d1, "deficit_second": b_d2},
        families=tuple(f.name for f in commuting_families(rho)),
        route=prep.route,
    )

