"""Command line entry point: `dmksea <command> ...`.

Exit codes: 0 success, 2 usage or config error, 3 invalid matrix data.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from . import __version__
from .correlations import CorrelationReport, correlation_report
from .families import ALL_FAMILIES, commuting_families, family, pair_name
from .fileio import ConfigError, MatrixFormatError, format_matrix, load_config, load_matrix
from .pauli_core import PAULI_LABELS, bloch_decompose, hermitian_eig4
from .sweep import (
    DEFAULT_STEPS,
    FIG1_GAMMAS,
    SweepSpec,
    fig1_comments,
    fig1_spec,
    format_measure,
    hamiltonian_for,
    run_sweep,
    write_csv,
    write_json,
)
from .thermal import gibbs
from .transforms import canonical_target, canonicalizer, family_spectrum

EXIT_USAGE = 2
EXIT_MATRIX = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _family_arg(text: str):
    try:
        return family(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_config(args):
    if args.config is None:
        raise CliError("--config is required")
    try:
        return load_config(args.config)
    except (ConfigError, KeyError) as exc:
        raise CliError(f"{args.config}: {exc}") from None


def _load_matrix_file(path: str) -> np.ndarray:
    try:
        return load_matrix(path)
    except MatrixFormatError as exc:
        raise CliError(f"{path}: {exc}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_MATRIX) from None


def _operator(args) -> tuple[np.ndarray, float | None]:
    """Hamiltonian from a matrix file or a config, plus the config temperature if any."""
    if getattr(args, "matrix", None) is not None:
        if args.config is not None:
            raise CliError("give either a matrix file or --config, not both")
        return _load_matrix_file(args.matrix), None
    c, temp = _load_config(args)
    try:
        return hamiltonian_for(c, args.family), temp
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _open_out(path: str | None) -> TextIO:
    if path is None:
        return sys.stdout
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _emit(text: str, path: str | None) -> None:
    out = _open_out(path)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


# --- commands -------------------------------------------------------------------


def cmd_hamiltonian(args) -> None:
    h, _ = _operator(args)
    coeffs = bloch_decompose(h)
    table = {
        PAULI_LABELS[a] + PAULI_LABELS[b]: float(coeffs[a, b])
        for a in range(4)
        for b in range(4)
        if coeffs[a, b] != 0.0
    }
    if args.out is not None:
        _emit(format_matrix(h), args.out)
    if args.format == "json":
        doc = {"matrix": [[[z.real, z.imag] for z in row] for row in h], "pauli": table}
        print(json.dumps(doc, indent=1))
        return
    print("# matrix rows, entries re,im")
    sys.stdout.write(format_matrix(h))
    print("# nonzero Pauli coefficients")
    for name, val in table.items():
        print(f"{name} {val!r}")


def cmd_classify(args) -> None:
    m = _load_matrix_file(args.matrix)
    fams = commuting_families(m)
    if args.format == "json":
        doc = {
            "families": [f.name for f in fams],
            "reductions": {f.name: {"gate": canonicalizer(f).label, "target": canonical_target(f).name} for f in fams},
        }
        print(json.dumps(doc, indent=1))
        return
    print("families: " + (" ".join(f.name for f in fams) if fams else "none"))
    for f in fams:
        kind = "X state" if f.is_inner else "separable form"
        print(f"{f.name}: {canonicalizer(f).label} -> {canonical_target(f).name} ({kind})")


def cmd_spectrum(args) -> None:
    h, _ = _operator(args)
    if args.family is not None:
        try:
            w = family_spectrum(h, args.family)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        method = f"2x2 blocks of family {args.family.name}"
    else:
        w = hermitian_eig4(h).eigenvalues
        method = "Jacobi"
    if args.format == "json":
        print(json.dumps({"method": method, "eigenvalues": [float(x) for x in w]}, indent=1))
        return
    print(f"# eigenvalues ({method})")
    for x in w:
        print(format(float(x), ".17g"))


def _report_json(rep: CorrelationReport) -> dict:
    out = {k: float(format_measure(v)) for k, v in rep.measures().items()}
    out["ppt_separable"] = rep.ppt_separable
    out["min_pt_eigenvalue"] = float(format_measure(rep.min_pt_eigenvalue))
    out["branches"] = {
        k: {
            "winner": b.winner,
            "zero": float(format_measure(b.value_at_0)),
            "pi_half": float(format_measure(b.value_at_pi_half)),
            "interior": float(format_measure(b.interior_value)),
            "interior_theta": float(format_measure(b.interior_theta)),
        }
        for k, b in rep.branches.items()
    }
    out["families"] = list(rep.families)
    out["route"] = rep.route
    return out


def format_report(rep: CorrelationReport) -> str:
    lines = [f"{k} {format_measure(v)}" for k, v in rep.measures().items()]
    lines.append(f"ppt_separable {'yes' if rep.ppt_separable else 'no'}")
    lines.append(f"min_pt_eigenvalue {format_measure(rep.min_pt_eigenvalue)}")
    for k, b in rep.branches.items():
        lines.append(f"branch_{k} {b.winner}")
    lines.append("families " + (" ".join(rep.families) if rep.families else "none"))
    lines.append(f"route {rep.route}")
    return "\n".join(lines) + "\n"


def cmd_correlations(args) -> None:
    h, temp = _operator(args)
    if args.temp is not None:
        temp = args.temp
    if temp is None:
        raise CliError("temperature missing: pass --temp or set T in the config")
    if not np.isfinite(temp) or temp <= 0.0:
        raise CliError(f"temperature must be positive, got {temp}")
    rep = correlation_report(gibbs(h, temp))
    if args.format == "json":
        text = json.dumps(_report_json(rep), indent=1) + "\n"
    else:
        text = format_report(rep)
    _emit(text, args.out)


def cmd_sweep(args) -> None:
    c, temp = _load_config(args)
    if args.temp is not None:
        temp = args.temp
    try:
        spec = SweepSpec(args.var, args.start, args.stop, args.steps, c, temp, args.family)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rows = run_sweep(spec, args.jobs)
    out = _open_out(args.out)
    try:
        if args.format == "json":
            write_json(rows, out, {"variable": spec.variable})
        else:
            write_csv(rows, out)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_fig1(args) -> None:
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    ext = "json" if args.format == "json" else "csv"
    for gz in FIG1_GAMMAS:
        spec = fig1_spec(gz, args.steps)
        rows = run_sweep(spec, args.jobs)
        path = outdir / f"fig1_gz{gz:g}.{ext}"
        with open(path, "w", newline="") as fh:
            if ext == "json":
                write_json(rows, fh, {"comments": fig1_comments(gz, args.steps)})
            else:
                write_csv(rows, fh, fig1_comments(gz, args.steps))
        print(path)


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmksea", description="Two-qubit XYZ + DM + KSEA Hamiltonians and their thermal correlations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp, matrix: bool):
        sp.add_argument("--config", help="coupling file with 'key = value' lines")
        sp.add_argument("--family", type=_family_arg, help="require the Hamiltonian to lie in this family, e.g. zz or 0x")
        if matrix:
            sp.add_argument("matrix", nargs="?", help="4x4 matrix file (rows of re[,im] entries) instead of --config")

    sp = sub.add_parser("hamiltonian", help="print the Hamiltonian matrix and its Pauli coefficients")
    source(sp, matrix=False)
    sp.add_argument("--out", help="also write the matrix file here")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_hamiltonian)

    sp = sub.add_parser("classify", help="list the families a matrix belongs to")
    sp.add_argument("matrix", help="4x4 matrix file")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("spectrum", help="eigenvalues, by 2x2 blocks when --family is given")
    source(sp, matrix=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("correlations", help="entanglement, discord and work deficit of the Gibbs state")
    source(sp, matrix=True)
    sp.add_argument("--temp", type=float, help="temperature (overrides T in the config)")
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_correlations)

    sp = sub.add_parser("sweep", help="sweep one coupling or T and tabulate the measures")
    source(sp, matrix=False)
    sp.add_argument("--var", required=True, help="coupling key (B1x ... Gz) or T")
    sp.add_argument("--from", dest="start", type=float, required=True)
    sp.add_argument("--to", dest="stop", type=float, required=True)
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    sp.add_argument("--temp", type=float, help="fixed temperature (overrides T in the config)")
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes; output order does not depend on it")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("fig1", help="write the three zero-field temperature sweeps (Gz = 0, 0.3, 0.5)")
    sp.add_argument("--out", help="output directory (default: current)")
    sp.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_fig1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"dmksea {args.command}: error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
