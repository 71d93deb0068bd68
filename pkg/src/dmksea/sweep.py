"""Parameter sweeps of the thermal correlation measures and their CSV/JSON output."""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .correlations import CorrelationReport, correlation_report
from .families import CouplingSet, Family, build_hamiltonian, family, full_hamiltonian, physical_projection
from .thermal import gibbs

CSV_COLUMNS = ("var", "C", "Q1", "Q2", "D1", "D2", "branchQ1", "branchQ2", "branchD1", "branchD2", "ppt")
SWEEP_VARIABLES = CouplingSet.KEYS + ("T",)

DEFAULT_STEPS = 300
T_FLOOR = 0.01

FIG1_COUPLINGS = CouplingSet(J=(-1.0, -1.5, -2.0), D=(0.0, 0.0, 1.8))
FIG1_GAMMAS = (0.0, 0.3, 0.5)
FIG1_T_RANGE = (T_FLOOR, 3.0)


def hamiltonian_for(c: CouplingSet, f: Family | str | None = None) -> np.ndarray:
    """Full Hamiltonian, or the family-f member when f is given.

    Couplings outside the family are an error, reported by name, rather than
    silently dropped.
    """
    if f is None:
        return full_hamiltonian(c)
    f = family(f)
    params, rest = physical_projection(c, f)
    scale = max(1.0, max(abs(v) for v in c.as_dict().values()))
    if not rest.is_zero(atol=1e-12 * scale):
        bad = [k for k, v in rest.as_dict().items() if abs(v) > 1e-12 * scale]
        raise ValueError(f"couplings outside family {f.name}: {', '.join(bad)}")
    return build_hamiltonian(f, params)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int = DEFAULT_STEPS
    couplings: CouplingSet = CouplingSet()
    temperature: float | None = None
    family: Family | None = None

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"cannot sweep {self.variable!r}; choose one of {', '.join(SWEEP_VARIABLES)}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)) or not self.start < self.stop:
            raise ValueError(f"sweep range must satisfy from < to, got [{self.start}, {self.stop}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps}")
        if self.variable == "T":
            if self.start <= 0.0:
                raise ValueError(f"temperature sweep must start above 0, got {self.start}")
        elif self.temperature is None or not self.temperature > 0.0:
            raise ValueError(f"a positive fixed temperature is required, got {self.temperature}")
        if self.family is not None:
            object.__setattr__(self, "family", family(self.family))
            # membership is affine in the swept coupling, so checking both ends covers the range
            for v in (self.start, self.stop):
                hamiltonian_for(self.couplings_at(v), self.family)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.steps))

    def couplings_at(self, value: float) -> CouplingSet:
        if self.variable == "T":
            return self.couplings
        return self.couplings.replace(**{self.variable: float(value)})

    def temperature_at(self, value: float) -> float:
        return float(value) if self.variable == "T" else float(self.temperature)

    def state_at(self, value: float) -> np.ndarray:
        h = hamiltonian_for(self.couplings_at(value), self.family)
        return gibbs(h, self.temperature_at(value))


@dataclass(frozen=True)
class ResultRow:
    value: float
    report: CorrelationReport

    def winners(self) -> tuple[str, str, str, str]:
        b = self.report.branches
        return tuple(b[k].winner for k in ("discord_first", "discord_second", "deficit_first", "deficit_second"))

    def fields(self) -> list[str]:
        r = self.report
        nums = (r.concurrence, r.discord_first, r.discord_second, r.deficit_first, r.deficit_second)
        return [repr(float(self.value))] + [format_measure(x) for x in nums] + list(self.winners()) + [
            "1" if r.ppt_separable else "0"
        ]

    def as_json(self) -> dict:
        vals = self.fields()
        out: dict = {"var": float(self.value)}
        out.update((k, float(v)) for k, v in zip(CSV_COLUMNS[1:6], vals[1:6]))
        out.update(zip(CSV_COLUMNS[6:10], self.winners()))
        out["ppt"] = self.report.ppt_separable
        return out


def format_measure(x: float) -> str:
    return format(float(x), ".12g")


def _evaluate(args: tuple[SweepSpec, float]) -> ResultRow:
    spec, value = args
    return ResultRow(float(value), correlation_report(spec.state_at(value)))


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[ResultRow]:
    """Evaluate every grid point; the result order is the grid order whatever `jobs` is."""
    tasks = [(spec, float(v)) for v in spec.grid()]
    if jobs <= 1:
        return [_evaluate(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def write_csv(rows: list[ResultRow], stream: TextIO, comments: list[str] | None = None) -> None:
    for line in comments or ():
        stream.write(f"# {line}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.fields())


def write_json(rows: list[ResultRow], stream: TextIO, meta: dict | None = None) -> None:
    doc = {"columns": list(CSV_COLUMNS), "rows": [row.as_json() for row in rows]}
    if meta:
        doc["meta"] = meta
    json.dump(doc, stream, indent=1)
    stream.write("\n")


def fig1_spec(gamma_z: float, steps: int = DEFAULT_STEPS) -> SweepSpec:
    """Temperature sweep of the zero-field XYZ + D_z + Gamma_z dimer."""
    return SweepSpec("T", FIG1_T_RANGE[0], FIG1_T_RANGE[1], steps, FIG1_COUPLINGS.replace(Gz=gamma_z),
                     family=family("zz"))


def fig1_comments(gamma_z: float, steps: int) -> list[str]:
    c = FIG1_COUPLINGS.replace(Gz=gamma_z)
    return [
        "thermal correlations vs temperature, zero field",
        "couplings: " + ", ".join(f"{k}={v:g}" for k, v in c.as_dict().items() if v != 0.0),
        f"T grid: {steps} points on [{FIG1_T_RANGE[0]:g}, {FIG1_T_RANGE[1]:g}] (range is a reproduction choice)",
        "entropies in bits; Q = discord, D = one-way work deficit, 1/2 = measured qubit",
    ]
