"""Plain-text config and matrix file formats used by the command line."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .families import CouplingSet
from .pauli_core import check_hermitian

CONFIG_KEYS = CouplingSet.KEYS + ("T",)


class ConfigError(ValueError):
    """Unreadable or inconsistent configuration (command line exit code 2)."""


class MatrixFormatError(ValueError):
    """A matrix file that does not parse as 4 rows of 4 entries."""


def _content_lines(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_config(text: str) -> tuple[CouplingSet, float | None]:
    """Parse `key = value` lines into couplings and an optional temperature.

    Keys are B1x ... B2z, Jx ... Jz, Dx ... Dz, Gx ... Gz and T. Missing
    couplings default to zero; unknown or repeated keys are errors.
    """
    values: dict[str, float] = {}
    for lineno, line in _content_lines(text.splitlines()):
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: key {key!r} given twice")
        try:
            val = float(raw)
        except ValueError:
            raise ConfigError(f"line {lineno}: value for {key!r} is not a number: {raw!r}") from None
        if not np.isfinite(val):
            raise ConfigError(f"line {lineno}: value for {key!r} is not finite")
        values[key] = val
    temp = values.pop("T", None)
    return CouplingSet.from_mapping(values), temp


def load_config(path: str | Path) -> tuple[CouplingSet, float | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def format_config(c: CouplingSet, temperature: float | None = None) -> str:
    lines = [f"{k} = {v!r}" for k, v in c.as_dict().items() if v != 0.0]
    if temperature is not None:
        lines.append(f"T = {temperature!r}")
    return "\n".join(lines) + "\n"


def _parse_entry(tok: str) -> complex:
    re_part, sep, im_part = tok.partition(",")
    try:
        return complex(float(re_part), float(im_part) if sep else 0.0)
    except ValueError:
        raise MatrixFormatError(f"bad matrix entry {tok!r}; expected re or re,im") from None


def parse_matrix(text: str, hermitian: bool = True) -> np.ndarray:
    """Read four whitespace-separated rows of `re[,im]` entries.

    Raises MatrixFormatError for shape or number problems and a plain
    ValueError when `hermitian` is set and the matrix is not Hermitian.
    """
    rows = []
    for lineno, line in _content_lines(text.splitlines()):
        toks = line.split()
        if len(toks) != 4:
            raise MatrixFormatError(f"line {lineno}: expected 4 entries, got {len(toks)}")
        rows.append([_parse_entry(t) for t in toks])
    if len(rows) != 4:
        raise MatrixFormatError(f"expected 4 matrix rows, got {len(rows)}")
    m = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise MatrixFormatError("matrix has non-finite entries")
    if hermitian:
        check_hermitian(m, "matrix file")
    return m


def load_matrix(path: str | Path, hermitian: bool = True) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read matrix file {path}: {exc.strerror}") from None
    return parse_matrix(text, hermitian)


def _fmt17(x: float) -> str:
    return format(float(x), ".17g")


def format_matrix(m: np.ndarray) -> str:
    """Matrix file text, 17 significant digits, so parse_matrix gives back the same doubles."""
    m = np.asarray(m, dtype=complex)
    out = io.StringIO()
    for row in m:
        out.write(" ".join(f"{_fmt17(z.real)},{_fmt17(z.imag)}" for z in row))
        out.write("\n")
    return out.getvalue()


def write_matrix(m: np.ndarray, stream: TextIO) -> None:
    stream.write(format_matrix(m))
