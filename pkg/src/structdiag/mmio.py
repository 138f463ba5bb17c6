"""Matrix Market "array" reader/writer for dense complex matrices.

Values are written column-major, one "re im" pair per line, formatted
with 17 significant digits so that read -> write -> read round-trips
byte-identically for files produced by this writer.
"""

from __future__ import annotations

import io
import os

import numpy as np

from .errors import ParseError

_HEADER = "%%MatrixMarket matrix array complex general"


def _format(x: float) -> str:
    return f"{x:.17g}"


def write_matrix(path: str | os.PathLike, a: np.ndarray) -> None:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise ParseError("only 2-D matrices can be written")
    lines = [_HEADER, f"{a.shape[0]} {a.shape[1]}"]
    for j in range(a.shape[1]):
        for i in range(a.shape[0]):
            z = a[i, j]
            lines.append(f"{_format(z.real)} {_format(z.imag)}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse(fh: io.TextIOBase, source: str) -> np.ndarray:
    header = fh.readline()
    tokens = header.strip().lower().split()
    if (len(tokens) != 5 or tokens[0] != "%%matrixmarket"
            or tokens[1] != "matrix" or tokens[2] != "array"
            or tokens[3] not in ("complex", "real")
            or tokens[4] != "general"):
        raise ParseError(f"{source}: not a MatrixMarket array header")
    complex_field = tokens[3] == "complex"
    size_line = None
    for line in fh:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        size_line = stripped
        break
    if size_line is None:
        raise ParseError(f"{source}: missing size line")
    parts = size_line.split()
    if len(parts) != 2:
        raise ParseError(f"{source}: malformed size line {size_line!r}")
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"{source}: malformed size line {size_line!r}")
    if rows < 0 or cols < 0:
        raise ParseError(f"{source}: negative dimensions")
    values = []
    for line in fh:
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        fields = stripped.split()
        try:
            if complex_field:
                if len(fields) != 2:
                    raise ValueError
                values.append(complex(float(fields[0]), float(fields[1])))
            else:
                if len(fields) != 1:
                    raise ValueError
                values.append(complex(float(fields[0]), 0.0))
        except ValueError:
            raise ParseError(f"{source}: malformed entry line {stripped!r}")
    if len(values) != rows * cols:
        raise ParseError(
            f"{source}: expected {rows * cols} entries, found {len(values)}")
    a = np.ascontiguousarray(
        np.array(values, dtype=np.complex128).reshape((cols, rows)).T)
    if not np.all(np.isfinite(a)):
        raise ParseError(f"{source}: non-finite entries")
    return a


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    try:
        with open(path, "r", encoding="ascii") as fh:
            return _parse(fh, str(path))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text matrix file") from exc
