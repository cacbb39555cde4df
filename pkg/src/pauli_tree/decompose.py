"""Pauli tree decomposition.

Root-to-leaf paths of the quaternary Pauli tree spell Pauli strings from the
last text character (``sigma_0``) to the first. Descending to level ``l``
rewrites the segment ``[2^l, 2^(l+1))`` of two arrays, column indices ``k``
and signs ``m``, so a leaf holds the sparse form of its string after only a
few cheap segment updates. Siblings are visited in the order I, X, Y, Z
because each update is a difference against the previous sibling.

``k`` is kept relative to the running X/Y mask: the stored value is the true
column minus the mask, which makes every segment update independent of the
letters chosen further down the path. The mask is added back while a
coefficient is computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .pauli import PauliLetter, compose
from .sources import MatrixSource, as_source, check_structure
from .structure import GENERAL, Structure, prefix_feasible

__all__ = [
    "TreeState",
    "WalkResult",
    "LeafMismatch",
    "update_tree",
    "compute_coefficient",
    "walk",
    "decompose_general",
    "decompose_structured",
    "decompose_naive",
    "predicted_op_count",
    "NAIVE_MAX_QUBITS",
]

NAIVE_MAX_QUBITS = 8
# rows per entry request; bounds the walk's temporaries independently of n
LEAF_CHUNK = 1024

_LETTERS = "IXYZ"
_DIAG = {p.value: p.diagonality for p in PauliLetter}
_SIGN = {p.value: p.sign for p in PauliLetter}


class LeafMismatch(AssertionError):
    """A leaf state differs from the directly composed operator."""


class TreeState:
    """The walk's private ``k``/``m`` arrays plus the current path.

    With ``fixed_columns`` the column array is never updated: it is set once
    to ``j ^ column_mask`` and only signs are tracked. That is valid for
    structures whose allowed strings all share one X/Y mask (diagonal and
    anti-diagonal).
    """

    def __init__(self, n: int, fixed_columns: bool = False, column_mask: int = 0):
        if n < 1:
            raise ValueError("n must be >= 1")
        size = 1 << n
        self.n = n
        self.fixed_columns = fixed_columns
        self.column_mask = column_mask
        if fixed_columns:
            self.k = np.arange(size, dtype=np.int64)
            self.k ^= column_mask
        else:
            self.k = np.zeros(size, dtype=np.int64)
        self.m = np.zeros(size, dtype=np.int8)
        self.m[0] = 1
        self.depth = 0
        self.mask = 0
        self.n_y = 0
        self.path: list[str | None] = [None] * n
        self._ny_below = [0] * (n + 1)
        self.op_counter = 2

    def pauli(self) -> str:
        """Text form of the current path (complete only at a leaf)."""
        return "".join(reversed(self.path[: self.depth]))

    def columns(self) -> np.ndarray:
        """True column indices for the rows fixed so far."""
        if self.fixed_columns:
            return self.k.copy()
        return self.k + self.mask

    def check_leaf(self) -> None:
        if self.depth != self.n:
            raise ValueError("state is not at a leaf")
        expected = compose(self.pauli())
        if not (
            np.array_equal(self.columns(), expected.k)
            and np.array_equal(self.m, expected.m)
            and self.n_y == expected.n_y
        ):
            raise LeafMismatch(f"tree state at leaf {self.pauli()} differs from compose()")


def update_tree(letter, level: int, state: TreeState) -> None:
    """Move the state to ``letter`` at ``level``.

    ``level == state.depth`` enters a fresh level (copy from the top half);
    ``level < state.depth`` moves from the letter last placed at ``level`` to
    its next sibling and applies only the difference. Anything deeper than
    ``level`` is discarded.
    """
    letter = PauliLetter(letter).value
    if not 0 <= level < state.n:
        raise ValueError(f"level {level} out of range for n={state.n}")
    _update(letter, level, state)


def _update(letter: str, level: int, state: TreeState) -> None:
    if level == state.depth:
        prev = None
    elif level < state.depth:
        prev = state.path[level]
    else:
        raise ValueError(f"cannot update level {level} at depth {state.depth}")

    half = 1 << level
    d = _DIAG[letter]
    k, m = state.k, state.m
    if state.fixed_columns and ((state.column_mask >> level) & 1) != d:
        raise ValueError(f"letter {letter} not allowed at level {level} with fixed columns")

    if prev is None:
        if not state.fixed_columns:
            np.add(k[:half], -half if d else half, out=k[half : 2 * half])
            state.op_counter += half
        if _SIGN[letter] > 0:
            m[half : 2 * half] = m[:half]
        else:
            np.negative(m[:half], out=m[half : 2 * half])
        state.op_counter += half
    else:
        prev_d = _DIAG[prev]
        if d != prev_d and not state.fixed_columns:
            k[half : 2 * half] += (prev_d - d) * 2 * half
            state.op_counter += half
        if _SIGN[letter] != _SIGN[prev]:
            np.negative(m[half : 2 * half], out=m[half : 2 * half])
            state.op_counter += half

    state.path[level] = letter
    state.depth = level + 1
    state.mask = (state.mask & (half - 1)) | (d << level)
    state.n_y = state._ny_below[level] + (letter == "Y")
    state._ny_below[level + 1] = state.n_y


def _leaf_sum(state: TreeState, src: MatrixSource, cols: np.ndarray) -> complex:
    k, m = state.k, state.m
    shift = 0 if state.fixed_columns else state.mask
    if shift:
        k += shift
    try:
        size = len(k)
        if size <= LEAF_CHUNK:
            return _chunk_sum(src, k, m, cols)
        total = 0j
        for start in range(0, size, LEAF_CHUNK):
            stop = start + LEAF_CHUNK
            total += _chunk_sum(src, k[start:stop], m[start:stop], cols[start:stop])
        return total
    finally:
        if shift:
            k -= shift


def _chunk_sum(src: MatrixSource, rows, signs, cols) -> complex:
    vals = src.entries(rows, cols)
    if not vals.flags.writeable:
        vals = vals.copy()
    np.multiply(vals, signs, out=vals)
    return complex(vals.sum())


def _finish(total: complex, n_y: int, n: int) -> complex:
    # (-i)**n_y applied without rounding, then the exact 2^-n scale
    re, im = total.real, total.imag
    e = n_y % 4
    if e == 1:
        re, im = im, -re
    elif e == 2:
        re, im = -re, -im
    elif e == 3:
        re, im = -im, re
    scale = 2.0 ** -n
    return complex(re * scale, im * scale)


def compute_coefficient(state: TreeState, src, cols: np.ndarray | None = None) -> complex:
    """``2^-n (-i)^n_Y sum_j m[j] A[k[j], j]`` for the leaf in ``state``."""
    if state.depth != state.n:
        raise ValueError("coefficient requested before reaching a leaf")
    src = as_source(src)
    if cols is None:
        cols = np.arange(1 << state.n, dtype=np.int64)
    return _finish(_leaf_sum(state, src, cols), state.n_y, state.n)


@dataclass
class WalkResult:
    n: int
    terms: list[tuple[str, complex]] = field(default_factory=list)
    op_count: int = 0
    leaves: int = 0

    def decomposition(self, prune_tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
        return Decomposition.pruned(self.n, self.terms, prune_tol)


def _new_state(n: int, structure: Structure) -> TreeState:
    if structure.kind == "diagonal":
        return TreeState(n, fixed_columns=True, column_mask=0)
    if structure.kind == "antidiagonal":
        return TreeState(n, fixed_columns=True, column_mask=(1 << n) - 1)
    return TreeState(n)


def walk(
    src,
    structure: Structure = GENERAL,
    state: TreeState | None = None,
    *,
    prune_tol: float = DEFAULT_PRUNE_TOL,
    check_leaves: bool = False,
) -> WalkResult:
    """Depth-first walk of the (pruned) Pauli tree below ``state``.

    Without ``state`` the whole tree is walked from the root. Terms with
    ``|c| <= prune_tol`` are dropped (exact zeros always). ``op_count`` is the
    state's write counter at the end of the walk.
    """
    src = as_source(src)
    n = src.n
    structure.check_size(n)
    if state is None:
        state = _new_state(n, structure)
    elif state.n != n:
        raise ValueError(f"state has n={state.n}, source has n={n}")
    cols = np.arange(1 << n, dtype=np.int64)
    result = WalkResult(n)
    terms = result.terms
    general = structure.kind == "general"

    def emit():
        if check_leaves:
            state.check_leaf()
        coeff = _finish(_leaf_sum(state, src, cols), state.n_y, n)
        result.leaves += 1
        if coeff != 0 and abs(coeff) > prune_tol:
            terms.append((state.pauli(), coeff))

    def explore(level: int):
        base = state.mask
        last = level == n - 1
        for letter in _LETTERS:
            if not general and not prefix_feasible(
                structure, level + 1, base | (_DIAG[letter] << level)
            ):
                continue
            _update(letter, level, state)
            if last:
                emit()
            else:
                explore(level + 1)

    if state.depth == n:
        emit()
    else:
        explore(state.depth)
    result.terms.sort(key=lambda t: t[0])
    result.op_count = state.op_counter
    return result


def decompose_general(src, *, prune_tol: float = DEFAULT_PRUNE_TOL,
                      check_leaves: bool = False) -> Decomposition:
    """Pauli decomposition of any ``2^n x 2^n`` matrix by the full tree walk."""
    return walk(src, GENERAL, prune_tol=prune_tol, check_leaves=check_leaves).decomposition(prune_tol)


def decompose_structured(src, structure: Structure, *, prune_tol: float = DEFAULT_PRUNE_TOL,
                         check_leaves: bool = False, verify: bool = False) -> Decomposition:
    """Walk only the branches ``structure`` allows.

    The source is trusted to honour the structure and entries outside it are
    never read, unless ``verify`` asks for a full scan first.
    """
    src = as_source(src)
    if verify and not check_structure(src, structure):
        raise ValueError(f"matrix does not have {structure!r} structure")
    return walk(src, structure, prune_tol=prune_tol, check_leaves=check_leaves).decomposition(prune_tol)


def decompose_naive(src, *, prune_tol: float = DEFAULT_PRUNE_TOL,
                    max_qubits: int = NAIVE_MAX_QUBITS) -> Decomposition:
    """Reference decomposition: every coefficient by its own sparse trace.

    Each string is composed from scratch and ``Tr(P A)`` is read off as
    ``sum_j P[j, k_j] A[k_j, j]``.
    """
    src = as_source(src)
    n = src.n
    if n > max_qubits:
        raise ValueError(f"naive decomposition limited to {max_qubits} qubits, got {n}")
    a = src.to_dense()
    rows = np.arange(1 << n)
    scale = 2.0 ** -n
    terms = {}
    for letters in itertools.product("IXYZ", repeat=n):
        key = "".join(letters)
        op = compose(key)
        trace = np.sum(op.m * a[op.k, rows]) * op.phase
        terms[key] = trace * scale
    return Decomposition.pruned(n, terms, prune_tol)


def _group_cost(letters, half: int, fixed_columns: bool) -> int:
    cost = 0
    prev = None
    for letter in letters:
        if prev is None:
            cost += half if fixed_columns else 2 * half
        else:
            if _DIAG[letter] != _DIAG[prev] and not fixed_columns:
                cost += half
            if _SIGN[letter] != _SIGN[prev]:
                cost += half
        prev = letter
    return cost


def predicted_op_count(n: int, structure: Structure = GENERAL) -> int:
    """Exact number of array writes the walk performs (plus 2 for set-up).

    General: ``2 + 5 (8^n - 1) / 7``. Diagonal and anti-diagonal:
    ``2 + 2 (4^n - 1) / 3``. Band structures are summed level by level over
    the pruned tree, grouping nodes by their X/Y mask.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if structure.kind == "general":
        return 2 + 5 * (8**n - 1) // 7
    if structure.kind in ("diagonal", "antidiagonal"):
        return 2 + 2 * (4**n - 1) // 3
    structure.check_size(n)
    return _enumerated_op_count(n, structure)


def _enumerated_op_count(n: int, structure: Structure) -> int:
    fixed = structure.fixed_columns
    total = 2
    for level in range(n):
        half = 1 << level
        for mask in range(half):
            if not prefix_feasible(structure, level, mask):
                continue
            letters = [
                p for p in _LETTERS
                if prefix_feasible(structure, level + 1, mask | (_DIAG[p] << level))
            ]
            # 2^level distinct paths share each mask
            total += half * _group_cost(letters, half, fixed)
    return total
