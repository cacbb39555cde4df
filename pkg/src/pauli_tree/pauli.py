"""Pauli letters, strings and the sparse (k, m, n_Y) operator form.

A Pauli string is written as ``n`` uppercase characters over ``IXYZ``. The
leftmost character is the first (most significant) tensor factor, so for the
text ``"XZ"`` the operator is ``X (x) Z`` and the composer index ``sigma_0``
is the last character, ``Z``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "PauliLetter",
    "SparsePauliOperator",
    "PhasedLetter",
    "PhasedString",
    "PAULI_MATRICES",
    "MAX_COMPOSE_QUBITS",
    "MAX_DENSE_QUBITS",
    "parse_pauli",
    "diagonality",
    "sign_factor",
    "x_mask",
    "compose",
    "operator_entry",
    "letter_product",
    "string_product",
    "dense",
    "phase_value",
]

MAX_COMPOSE_QUBITS = 30
MAX_DENSE_QUBITS = 12

_PAULI_RE = re.compile(r"[IXYZ]+")


class PauliLetter(str, Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def diagonality(self) -> int:
        return 1 if self in (PauliLetter.X, PauliLetter.Y) else 0

    @property
    def sign(self) -> int:
        return 1 if self in (PauliLetter.I, PauliLetter.X) else -1


PAULI_MATRICES = {
    "I": np.array([[1, 0], [0, 1]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# i**e for e in Z_4, kept exact
_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


def phase_value(exponent: int) -> complex:
    """Return ``i**exponent`` for an integer exponent."""
    return _PHASES[exponent % 4]


def parse_pauli(text: str, n: int | None = None) -> str:
    """Validate the text form of a Pauli string and return it.

    Raises ``ValueError`` when the text is not a non-empty word over
    ``IXYZ`` or, if ``n`` is given, has the wrong length.
    """
    if not isinstance(text, str) or not _PAULI_RE.fullmatch(text):
        raise ValueError(f"invalid Pauli string {text!r}")
    if n is not None and len(text) != n:
        raise ValueError(f"Pauli string {text!r} has length {len(text)}, expected {n}")
    return text


def diagonality(letter: str) -> int:
    """0 for I and Z, 1 for X and Y."""
    return PauliLetter(letter).diagonality


def sign_factor(letter: str) -> int:
    """+1 for I and X, -1 for Y and Z (the doubling sign of the composer)."""
    return PauliLetter(letter).sign


def x_mask(pauli: str) -> int:
    """Integer whose bit ``l`` is the diagonality of ``sigma_l``.

    This is also the column of the nonzero entry in row 0.
    """
    mask = 0
    for ch in pauli:
        mask = (mask << 1) | (ch in "XY")
    return mask


@dataclass(frozen=True, eq=False)
class SparsePauliOperator:
    """One nonzero per row: ``P[j, k[j]] = (-i)**n_y * m[j]``."""

    n: int
    k: np.ndarray
    m: np.ndarray
    n_y: int

    @property
    def phase(self) -> complex:
        return phase_value(-self.n_y)

    def __eq__(self, other):
        if not isinstance(other, SparsePauliOperator):
            return NotImplemented
        return (
            self.n == other.n
            and self.n_y == other.n_y
            and np.array_equal(self.k, other.k)
            and np.array_equal(self.m, other.m)
        )

    __hash__ = None


def compose(pauli: str) -> SparsePauliOperator:
    """Build the sparse form of a Pauli string with the doubling rule.

    ``k[0]`` holds the diagonality digits; every step ``l`` fills
    ``k[2^l:2^(l+1)]`` from ``k[0:2^l]`` by adding ``+2^l`` (I, Z) or
    ``-2^l`` (X, Y) and ``m`` by multiplying with the letter's sign.
    """
    parse_pauli(pauli)
    n = len(pauli)
    if n > MAX_COMPOSE_QUBITS:
        raise ValueError(f"compose supports at most {MAX_COMPOSE_QUBITS} qubits, got {n}")
    size = 1 << n
    k = np.empty(size, dtype=np.int64)
    m = np.empty(size, dtype=np.int8)
    k[0] = x_mask(pauli)
    m[0] = 1
    for level in range(n):
        letter = PauliLetter(pauli[n - 1 - level])
        half = 1 << level
        step = -half if letter.diagonality else half
        np.add(k[:half], step, out=k[half : 2 * half])
        if letter.sign > 0:
            m[half : 2 * half] = m[:half]
        else:
            np.negative(m[:half], out=m[half : 2 * half])
    return SparsePauliOperator(n=n, k=k, m=m, n_y=pauli.count("Y"))


def operator_entry(op: SparsePauliOperator, row: int) -> tuple[int, complex]:
    """Column and value of the nonzero entry in ``row``."""
    if not 0 <= row < (1 << op.n):
        raise IndexError(f"row {row} out of range for {op.n} qubits")
    return int(op.k[row]), op.phase * int(op.m[row])


def dense(op: SparsePauliOperator, max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
    """Materialize the operator as a ``2^n x 2^n`` complex array."""
    if op.n > max_qubits:
        raise ValueError(f"refusing to build a dense {op.n}-qubit matrix (limit {max_qubits})")
    size = 1 << op.n
    out = np.zeros((size, size), dtype=complex)
    out[np.arange(size), op.k] = op.phase * op.m
    return out


@dataclass(frozen=True)
class PhasedLetter:
    letter: str
    exponent: int  # phase is i**exponent

    @property
    def phase(self) -> complex:
        return phase_value(self.exponent)


@dataclass(frozen=True)
class PhasedString:
    pauli: str
    exponent: int

    @property
    def phase(self) -> complex:
        return phase_value(self.exponent)


# (a, b) -> (letter, exponent) with a @ b = i**exponent * letter
_PRODUCT_TABLE: dict[tuple[str, str], tuple[str, int]] = {}
for _a in "IXYZ":
    _PRODUCT_TABLE[("I", _a)] = (_a, 0)
    _PRODUCT_TABLE[(_a, "I")] = (_a, 0)
    _PRODUCT_TABLE[(_a, _a)] = ("I", 0)
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT_TABLE[(_a, _b)] = (_c, 1)
    _PRODUCT_TABLE[(_b, _a)] = (_c, 3)


def letter_product(a: str, b: str) -> PhasedLetter:
    letter, exponent = _PRODUCT_TABLE[(PauliLetter(a).value, PauliLetter(b).value)]
    return PhasedLetter(letter, exponent)


def string_product(p: str, q: str) -> PhasedString:
    """Letterwise product ``p @ q`` with its phase collected."""
    parse_pauli(p)
    parse_pauli(q)
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    letters = []
    exponent = 0
    for a, b in zip(p, q):
        letter, e = _PRODUCT_TABLE[(a, b)]
        letters.append(letter)
        exponent += e
    return PhasedString("".join(letters), exponent % 4)
