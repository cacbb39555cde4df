"""Decompositions of combined matrices, built from existing decompositions.

None of these touch a dense matrix. A missing key is a zero coefficient, and
results never store terms with ``|c| <= tol``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .pauli import string_product, phase_value

__all__ = [
    "direct_sum",
    "block_diagonal",
    "linear_combination",
    "product",
    "hermitian_augment",
]


def _same_size(a: Decomposition, b: Decomposition) -> None:
    if a.n != b.n:
        raise ValueError(f"size mismatch: n={a.n} vs n={b.n}")


def direct_sum(a: Decomposition, b: Decomposition, tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """``A (+) B = I (x) (A + B)/2 + Z (x) (A - B)/2``."""
    _same_size(a, b)
    terms = {}
    for key in set(a) | set(b):
        alpha, beta = a.get(key), b.get(key)
        terms["I" + key] = (alpha + beta) / 2
        terms["Z" + key] = (alpha - beta) / 2
    return Decomposition.pruned(a.n + 1, terms, tol)


def block_diagonal(blocks: Sequence[Decomposition], tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """``diag(A_1, ..., A_N)`` by pairing blocks recursively.

    The block count is padded with zero blocks up to a power of two.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("block_diagonal needs at least one block")
    n = blocks[0].n
    for blk in blocks[1:]:
        _same_size(blocks[0], blk)
    size = 1
    while size < len(blocks):
        size *= 2
    level = blocks + [Decomposition(n) for _ in range(size - len(blocks))]
    while len(level) > 1:
        level = [direct_sum(level[i], level[i + 1], tol) for i in range(0, len(level), 2)]
    return Decomposition(level[0].n, level[0])


def linear_combination(mu: complex, a: Decomposition, b: Decomposition,
                       tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """``mu A + B``."""
    _same_size(a, b)
    terms = {key: mu * a.get(key) + b.get(key) for key in set(a) | set(b)}
    return Decomposition.pruned(a.n, terms, tol)


def product(a: Decomposition, b: Decomposition, tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """``A B`` from the letterwise Pauli product table.

    Costs ``len(a) * len(b)`` string products; like terms are accumulated in
    the iteration order of the (sorted) inputs.
    """
    _same_size(a, b)
    acc: dict[str, complex] = defaultdict(complex)
    for p, alpha in a.items():
        for q, beta in b.items():
            prod = string_product(p, q)
            acc[prod.pauli] += alpha * beta * phase_value(prod.exponent)
    return Decomposition.pruned(a.n, acc, tol)


def hermitian_augment(a: Decomposition, tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """Decomposition of the Hermitian matrix ``[[0, A^*], [A, 0]]``.

    ``X (x) s`` takes ``Re(alpha_s)`` and ``Y (x) s`` takes ``Im(alpha_s)``, so
    every coefficient is real.
    """
    terms = {}
    for key, alpha in a.items():
        terms["X" + key] = complex(alpha.real, 0.0)
        terms["Y" + key] = complex(alpha.imag, 0.0)
    return Decomposition.pruned(a.n + 1, terms, tol)
