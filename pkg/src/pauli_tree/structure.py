"""Matrix structure classes and the Pauli supports they allow.

Whether a Pauli string can carry a nonzero coefficient for a structured
matrix depends only on its X/Y mask ``x`` (bit ``l`` set when ``sigma_l`` is X
or Y): the operator touches entries ``(j ^ x, j)`` and the smallest possible
``|(j ^ x) - j|`` is ``2^(h+1) - x`` where ``h`` is the top bit of ``x``. A band
matrix of half-width ``s`` therefore allows exactly the masks ``x = 0`` and
``x >= 2^(h+1) - s``. Half-width 1 gives the tridiagonal pattern
``(I|Z)^a (X|Y)^(n-a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .pauli import parse_pauli, x_mask

__all__ = [
    "Structure",
    "GENERAL",
    "DIAGONAL",
    "ANTIDIAGONAL",
    "TRIDIAGONAL",
    "band",
    "parse_structure",
    "mask_allowed",
    "prefix_feasible",
    "allowed_support",
    "support_size",
    "band_bound",
]


@dataclass(frozen=True)
class Structure:
    kind: str
    s: int = 0

    def __post_init__(self):
        if self.kind not in ("general", "diagonal", "antidiagonal", "band"):
            raise ValueError(f"unknown structure kind {self.kind!r}")
        if self.kind == "band" and self.s < 1:
            raise ValueError(f"band half-width must be >= 1, got {self.s}")

    @property
    def fixed_columns(self) -> bool:
        """True when every allowed string shares one X/Y mask."""
        return self.kind in ("diagonal", "antidiagonal")

    def check_size(self, n: int) -> None:
        if self.kind == "band" and self.s >= (1 << n):
            raise ValueError(f"band half-width {self.s} is not smaller than the dimension 2^{n}")

    def __str__(self):
        if self.kind == "band":
            return "tridiagonal" if self.s == 1 else f"band={self.s}"
        return self.kind

    def __repr__(self):
        if self.kind == "band":
            return f"Band({self.s})"
        return self.kind.capitalize()


GENERAL = Structure("general")
DIAGONAL = Structure("diagonal")
ANTIDIAGONAL = Structure("antidiagonal")
TRIDIAGONAL = Structure("band", 1)


def band(s: int) -> Structure:
    return Structure("band", s)


def parse_structure(text: str) -> Structure:
    """Parse ``general|diagonal|antidiagonal|tridiagonal|band=S``."""
    text = text.strip().lower()
    if text == "tridiagonal":
        return TRIDIAGONAL
    if text.startswith("band="):
        try:
            return band(int(text[5:]))
        except ValueError:
            raise ValueError(f"bad band width in {text!r}") from None
    if text in ("general", "diagonal", "antidiagonal"):
        return Structure(text)
    raise ValueError(f"unknown structure {text!r}")


def mask_allowed(structure: Structure, n: int, mask: int) -> bool:
    if structure.kind == "general":
        return True
    if structure.kind == "diagonal":
        return mask == 0
    if structure.kind == "antidiagonal":
        return mask == (1 << n) - 1
    if mask == 0:
        return True
    top = mask.bit_length()
    return mask >= (1 << top) - structure.s


def prefix_feasible(structure: Structure, depth: int, mask: int) -> bool:
    """Can a root path of ``depth`` letters with X/Y mask ``mask`` reach a leaf?

    The path fixes bits ``0..depth-1``; higher bits are still free.
    """
    if structure.kind == "general" or depth == 0:
        return True
    if structure.kind == "diagonal":
        return mask == 0
    if structure.kind == "antidiagonal":
        return mask == (1 << depth) - 1
    # stop here (higher bits zero) or fill bits upward to a new top bit
    if mask == 0 or mask >= (1 << mask.bit_length()) - structure.s:
        return True
    return (1 << depth) - mask <= structure.s


def allowed_support(structure: Structure, n: int) -> Callable[[str], bool]:
    """Membership predicate for the strings ``structure`` can produce."""

    def predicate(pauli: str) -> bool:
        parse_pauli(pauli, n)
        return mask_allowed(structure, n, x_mask(pauli))

    return predicate


def support_size(structure: Structure, n: int) -> int:
    """Number of strings in the support, counted over masks."""
    masks = sum(1 for x in range(1 << n) if mask_allowed(structure, n, x))
    return masks << n


def band_bound(s: int, n: int) -> int:
    """Term-count bound ``(s n - c(s)) 2^n`` for a band matrix."""
    top = int(math.floor(math.log2(s))) + 1
    c = s * top - (1 << top)
    return (s * n - c) << n
