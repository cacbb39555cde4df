"""Read-only matrix entry oracles.

The decomposer never needs the whole matrix at once: it asks for the vector of
entries ``A[rows[j], cols[j]]``. Every source answers that question through
``entries(rows, cols)``, which must be pure so several walks may share one
source across threads.
"""

from __future__ import annotations

import warnings
from typing import Callable

import numpy as np

from .structure import ANTIDIAGONAL, DIAGONAL, GENERAL, Structure, band

__all__ = [
    "MatrixSource",
    "DenseSource",
    "FunctionSource",
    "DiagonalSource",
    "BandSource",
    "PaddingWarning",
    "as_source",
    "pad_to_power_of_two",
    "qubits_for_dimension",
    "check_structure",
]


class PaddingWarning(UserWarning):
    """The input dimension was not a power of two and was zero-padded."""


def qubits_for_dimension(dim: int) -> int:
    if dim < 1:
        raise ValueError("matrix dimension must be positive")
    return max(1, (dim - 1).bit_length())


def pad_to_power_of_two(matrix) -> np.ndarray:
    """Zero-pad a square matrix up to the next ``2^n`` (``n >= 1``)."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dim = a.shape[0]
    size = 1 << qubits_for_dimension(dim)
    a = a.astype(complex, copy=False)
    if size == dim:
        return a
    warnings.warn(
        f"matrix of dimension {dim} zero-padded to {size}", PaddingWarning, stacklevel=3
    )
    out = np.zeros((size, size), dtype=complex)
    out[:dim, :dim] = a
    return out


class MatrixSource:
    """Base class. Subclasses set ``n`` and ``structure_hint``."""

    n: int
    structure_hint: Structure = GENERAL

    @property
    def dim(self) -> int:
        return 1 << self.n

    def entries(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def entry(self, row: int, col: int) -> complex:
        if not (0 <= row < self.dim and 0 <= col < self.dim):
            raise IndexError(f"entry ({row}, {col}) outside a {self.dim}x{self.dim} matrix")
        return complex(self.entries(np.array([row]), np.array([col]))[0])

    def to_dense(self) -> np.ndarray:
        idx = np.arange(self.dim)
        rows = np.repeat(idx, self.dim)
        cols = np.tile(idx, self.dim)
        return np.asarray(self.entries(rows, cols), dtype=complex).reshape(self.dim, self.dim)


class DenseSource(MatrixSource):
    def __init__(self, matrix, structure_hint: Structure = GENERAL):
        self.matrix = pad_to_power_of_two(matrix)
        self.matrix.setflags(write=False)
        self.n = qubits_for_dimension(self.matrix.shape[0])
        self.structure_hint = structure_hint

    def entries(self, rows, cols):
        return self.matrix[rows, cols]

    def to_dense(self):
        return self.matrix.copy()


class FunctionSource(MatrixSource):
    """Entries computed on demand by a vectorized ``fn(rows, cols)``.

    ``fn`` receives two integer arrays of equal length and returns the matching
    complex entries. Nothing is stored, so the matrix may be far larger than
    memory would allow in dense form.
    """

    def __init__(self, n: int, fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
                 structure_hint: Structure = GENERAL):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.fn = fn
        self.structure_hint = structure_hint

    def entries(self, rows, cols):
        out = np.asarray(self.fn(rows, cols))
        if out.dtype != np.complex128:
            out = out.astype(np.complex128)
        return out


class DiagonalSource(MatrixSource):
    """Diagonal (or anti-diagonal) matrix stored as one vector."""

    def __init__(self, values, anti: bool = False):
        values = np.asarray(values, dtype=complex)
        if values.ndim != 1:
            raise ValueError("diagonal values must be a vector")
        n = qubits_for_dimension(len(values))
        if len(values) != 1 << n:
            warnings.warn(
                f"diagonal of length {len(values)} zero-padded to {1 << n}",
                PaddingWarning,
                stacklevel=2,
            )
            values = np.concatenate([values, np.zeros((1 << n) - len(values), dtype=complex)])
        self.values = values
        self.values.setflags(write=False)
        self.n = n
        self.anti = anti
        self.structure_hint = ANTIDIAGONAL if anti else DIAGONAL

    def entries(self, rows, cols):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        if self.anti:
            on = rows + cols == self.dim - 1
        else:
            on = rows == cols
        out = np.zeros(rows.shape, dtype=complex)
        out[on] = self.values[rows[on]]
        return out


class BandSource(MatrixSource):
    """Band matrix in LAPACK general-band layout: ``ab[s + i - j, j] = A[i, j]``."""

    def __init__(self, ab, s: int):
        ab = np.asarray(ab, dtype=complex)
        if ab.ndim != 2 or ab.shape[0] != 2 * s + 1:
            raise ValueError(f"band storage must have {2 * s + 1} rows, got shape {ab.shape}")
        self.n = qubits_for_dimension(ab.shape[1])
        if ab.shape[1] != 1 << self.n:
            raise ValueError("band storage width must be a power of two")
        self.s = s
        self.ab = ab
        self.ab.setflags(write=False)
        self.structure_hint = band(s)
        self.structure_hint.check_size(self.n)

    @classmethod
    def from_dense(cls, matrix, s: int) -> "BandSource":
        a = pad_to_power_of_two(matrix)
        dim = a.shape[0]
        ab = np.zeros((2 * s + 1, dim), dtype=complex)
        for offset in range(-s, s + 1):
            # offset = i - j
            diag = np.diagonal(a, -offset)
            if offset >= 0:
                ab[s + offset, : dim - offset] = diag
            else:
                ab[s + offset, -offset:] = diag
        return cls(ab, s)

    def entries(self, rows, cols):
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        offset = rows - cols
        inside = np.abs(offset) <= self.s
        out = np.zeros(rows.shape, dtype=complex)
        out[inside] = self.ab[self.s + offset[inside], cols[inside]]
        return out


def as_source(matrix_or_source) -> MatrixSource:
    if isinstance(matrix_or_source, MatrixSource):
        return matrix_or_source
    return DenseSource(matrix_or_source)


def check_structure(src: MatrixSource, structure: Structure) -> bool:
    """True when every nonzero entry of ``src`` lies inside ``structure``."""
    if structure.kind == "general":
        return True
    if isinstance(src, FunctionSource):
        raise ValueError("function-backed matrices cannot be scanned")
    a = src.to_dense()
    rows, cols = np.nonzero(a)
    if structure.kind == "diagonal":
        return bool(np.all(rows == cols))
    if structure.kind == "antidiagonal":
        return bool(np.all(rows + cols == a.shape[0] - 1))
    return bool(np.all(np.abs(rows - cols) <= structure.s))
