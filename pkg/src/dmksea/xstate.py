"""Seven-parameter X density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

X_TOL = 1e-12


@dataclass(frozen=True)
class XParams:
    """X state with diagonal (a, b, c, d), rho[0, 3] = u and rho[1, 2] = v.

    Basis order is |00>, |01>, |10>, |11>.
    """

    a: float
    b: float
    c: float
    d: float
    u: complex = 0j
    v: complex = 0j

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))

    def violations(self, tol: float = X_TOL) -> list[str]:
        out = []
        for name in "abcd":
            if getattr(self, name) < -tol:
                out.append(f"{name} < 0")
        if abs(self.a + self.b + self.c + self.d - 1.0) > tol:
            out.append("a + b + c + d != 1")
        if self.a * self.d < abs(self.u) ** 2 - tol:
            out.append("ad < |u|^2")
        if self.b * self.c < abs(self.v) ** 2 - tol:
            out.append("bc < |v|^2")
        return out

    def is_valid(self, tol: float = X_TOL) -> bool:
        return not self.violations(tol)

    def validate(self, tol: float = X_TOL) -> XParams:
        bad = self.violations(tol)
        if bad:
            raise ValueError(f"invalid X state {self}: {', '.join(bad)}")
        return self

    def to_matrix(self) -> np.ndarray:
        m = np.diag([self.a, self.b, self.c, self.d]).astype(complex)
        m[0, 3] = self.u
        m[3, 0] = self.u.conjugate()
        m[1, 2] = self.v
        m[2, 1] = self.v.conjugate()
        return m

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> XParams:
        """Read the X entries of rho; entries off the X pattern are ignored."""
        rho = np.asarray(rho)
        return cls(
            a=rho[0, 0].real,
            b=rho[1, 1].real,
            c=rho[2, 2].real,
            d=rho[3, 3].real,
            u=rho[0, 3],
            v=rho[1, 2],
        )


def x_pattern_residual(m: np.ndarray) -> float:
    """Largest modulus among entries outside the diagonal and anti-diagonal."""
    mask = np.ones((4, 4), dtype=bool)
    idx = np.arange(4)
    mask[idx, idx] = False
    mask[idx, 3 - idx] = False
    return float(np.max(np.abs(np.asarray(m)[mask])))
