"""File formats: matrices in, decompositions in and out.

Decomposition files are UTF-8 text::

    # pauli-decomposition n=2
    II 0.5 0
    ZX -0.5 0

one ``<pauli> <re> <im>`` line per term, keys in ascending ``I<X<Y<Z``
order, floats printed with 17 significant digits so a read returns the
exact binary64 values that were written.
"""

from __future__ import annotations

import csv
import os
import re
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .decomposition import Decomposition
from .pauli import parse_pauli
from .sources import (
    DenseSource,
    DiagonalSource,
    FunctionSource,
    MatrixSource,
    check_structure,
)
from .structure import ANTIDIAGONAL, DIAGONAL, GENERAL, Structure, band

__all__ = [
    "DecompositionFormatError",
    "read_matrix",
    "write_matrix",
    "read_decomposition",
    "write_decomposition",
    "format_decomposition",
    "parse_decomposition",
    "autodetect_structure",
    "check_structure",
    "matrix_format_for",
]

_HEADER_RE = re.compile(r"#\s*pauli-decomposition\s+n=(\d+)\s*")


class DecompositionFormatError(ValueError):
    pass


def matrix_format_for(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".mtx", ".mm"):
        return "matrix-market"
    if suffix in (".csv", ".txt"):
        return "dense-csv"
    raise ValueError(f"cannot infer the matrix format of {os.fspath(path)!r}; use .mtx or .csv")


def _read_csv(path) -> np.ndarray:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            cells = [c.strip() for c in row]
            if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
                continue
            try:
                rows.append([complex(c.replace(" ", "")) for c in cells])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad matrix entry in {row!r}") from None
    if not rows:
        raise ValueError(f"{path}: empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: rows have unequal lengths")
    return np.array(rows, dtype=complex)


def read_matrix(path, format: str | None = None) -> DenseSource:
    """Load a square matrix, zero-padding to the next power of two.

    ``format`` is ``"matrix-market"`` (array or coordinate; real, complex,
    integer or pattern fields) or ``"dense-csv"`` (cells ``re`` or ``re+imj``).
    Inferred from the suffix when omitted.
    """
    format = format or matrix_format_for(path)
    if format == "matrix-market":
        try:
            data = scipy.io.mmread(path)
        except Exception as exc:
            raise ValueError(f"{path}: not a valid Matrix Market file ({exc})") from None
        if scipy.sparse.issparse(data):
            data = data.toarray()
        a = np.asarray(data)
    elif format == "dense-csv":
        a = _read_csv(path)
    else:
        raise ValueError(f"unknown matrix format {format!r}")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{path}: matrix must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError(f"{path}: matrix has dimension 0")
    return DenseSource(a)


def write_matrix(matrix, path, format: str | None = None) -> None:
    format = format or matrix_format_for(path)
    a = np.asarray(matrix, dtype=complex)
    if format == "matrix-market":
        field = "complex" if np.any(a.imag != 0) else "real"
        data = a if field == "complex" else a.real
        scipy.io.mmwrite(path, data, field=field, precision=17)
    elif format == "dense-csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            for row in a:
                writer.writerow([_csv_cell(z) for z in row])
    else:
        raise ValueError(f"unknown matrix format {format!r}")


def _csv_cell(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_decomposition(dec: Decomposition) -> str:
    lines = [f"# pauli-decomposition n={dec.n}"]
    for key, coeff in dec.items():
        lines.append(f"{key} {coeff.real:.17g} {coeff.imag:.17g}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str, source: str = "<string>") -> Decomposition:
    lines = text.splitlines()
    if not lines:
        raise DecompositionFormatError(f"{source}: empty file")
    header = _HEADER_RE.fullmatch(lines[0])
    if not header:
        raise DecompositionFormatError(f"{source}:1: expected '# pauli-decomposition n=<n>'")
    n = int(header.group(1))
    if n < 1:
        raise DecompositionFormatError(f"{source}:1: n must be >= 1")
    terms = {}
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DecompositionFormatError(f"{source}:{lineno}: expected '<pauli> <re> <im>'")
        key, re_text, im_text = parts
        try:
            parse_pauli(key, n)
            value = complex(float(re_text), float(im_text))
        except ValueError as exc:
            raise DecompositionFormatError(f"{source}:{lineno}: {exc}") from None
        if key in terms:
            raise DecompositionFormatError(f"{source}:{lineno}: duplicate term {key}")
        terms[key] = value
    return Decomposition(n, terms)


def write_decomposition(dec: Decomposition, path) -> None:
    Path(path).write_text(format_decomposition(dec), encoding="utf-8")


def read_decomposition(path) -> Decomposition:
    return parse_decomposition(Path(path).read_text(encoding="utf-8"), os.fspath(path))


def autodetect_structure(src: MatrixSource) -> Structure:
    """Tightest structure the stored entries satisfy, by a full scan.

    Preference follows cost: diagonal, anti-diagonal, band with the smallest
    half-width, general. Function-backed sources cannot be scanned.
    """
    if isinstance(src, FunctionSource):
        raise ValueError("function-backed matrices need an explicit structure")
    if isinstance(src, DiagonalSource):
        return src.structure_hint
    a = src.matrix if isinstance(src, DenseSource) else src.to_dense()
    rows, cols = np.nonzero(a)
    dim = a.shape[0]
    if np.all(rows == cols):
        return DIAGONAL
    if np.all(rows + cols == dim - 1):
        return ANTIDIAGONAL
    width = int(np.max(np.abs(rows - cols)))
    if width < dim - 1:
        return band(width)
    return GENERAL
