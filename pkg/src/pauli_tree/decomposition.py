from __future__ import annotations

from typing import Iterable, Iterator, Mapping

import numpy as np

from .pauli import MAX_DENSE_QUBITS, compose, parse_pauli

__all__ = ["Decomposition", "DEFAULT_PRUNE_TOL"]

DEFAULT_PRUNE_TOL = 1e-12


class Decomposition(Mapping[str, complex]):
    """Pauli coefficients of a ``2^n x 2^n`` matrix, ``A = sum(c * P)``.

    Missing strings have coefficient zero. Keys are kept in ascending
    ``I < X < Y < Z`` order so iteration, printing and files are canonical.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[str, complex] | Iterable[tuple[str, complex]] = ()):
        if n < 1:
            raise ValueError("n must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        checked = {}
        for key, value in items:
            parse_pauli(key, n)
            if key in checked:
                raise ValueError(f"duplicate Pauli string {key}")
            checked[key] = complex(value)
        self.n = n
        self._terms = dict(sorted(checked.items()))

    @classmethod
    def pruned(cls, n: int, terms, tol: float = DEFAULT_PRUNE_TOL) -> "Decomposition":
        """Build from raw terms, dropping ``|c| <= tol`` (exact zeros always)."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        return cls(n, ((k, v) for k, v in items if v != 0 and abs(v) > tol))

    def __getitem__(self, key: str) -> complex:
        return self._terms[key]

    def get(self, key, default=0j):
        return self._terms.get(key, default)

    def __iter__(self) -> Iterator[str]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Decomposition):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in list(self._terms.items())[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"Decomposition(n={self.n}, {{{body}{more}}})"

    def to_matrix(self, max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
        """Dense reconstruction ``sum(c * P)``."""
        if self.n > max_qubits:
            raise ValueError(f"refusing to build a dense {self.n}-qubit matrix (limit {max_qubits})")
        size = 1 << self.n
        out = np.zeros((size, size), dtype=complex)
        rows = np.arange(size)
        for key, coeff in self._terms.items():
            op = compose(key)
            out[rows, op.k] += coeff * op.phase * op.m
        return out

    def max_abs_difference(self, other: "Decomposition") -> float:
        """Largest ``|a_s - b_s|`` over the union of keys."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        keys = set(self._terms) | set(other)
        if not keys:
            return 0.0
        return max(abs(self.get(k) - other.get(k)) for k in keys)
