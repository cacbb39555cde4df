"""Forest-split parallel decomposition.

Cutting every branch of the Pauli tree at level ``c`` leaves ``4^c``
independent subtrees. Each subtree is seeded by replaying its root path on a
fresh state and is then walked exactly like the sequential routine, so every
coefficient is produced by the same operations in the same order and the
merged result is bit-identical to the sequential one.

Seeds are written in text order: the seed ``"XZ"`` roots the subtree of all
strings ending in ``XZ`` (``sigma_1 = X``, ``sigma_0 = Z``).
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field

from .decompose import TreeState, WalkResult, _new_state, _update, walk
from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .pauli import parse_pauli, x_mask
from .sources import as_source
from .structure import GENERAL, Structure, prefix_feasible

__all__ = [
    "ForestPlan",
    "ForestRun",
    "DecompositionError",
    "default_cut_level",
    "plan_forest",
    "seed_subtree",
    "run_forest",
    "decompose_parallel",
    "MAX_CUT_LEVEL",
]

MAX_CUT_LEVEL = 8


class DecompositionError(RuntimeError):
    """A worker failed while walking its subtree."""


def default_cut_level(n: int, workers: int) -> int:
    """Smallest ``c`` with ``4^c >= 8 W``, capped at ``n``."""
    return min(n, math.ceil(math.log(8 * workers, 4)))


@dataclass(frozen=True)
class ForestPlan:
    n: int
    cut_level: int
    workers: int
    seeds: tuple[str, ...]
    structure: Structure = GENERAL

    @property
    def subtree_count(self) -> int:
        return 4**self.cut_level


def plan_forest(n: int, workers: int = 1, cut_level: int | None = None,
                structure: Structure = GENERAL) -> ForestPlan:
    """Enumerate the subtree seeds, skipping any the structure rules out."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if cut_level is None:
        cut_level = default_cut_level(n, workers)
    if not 0 <= cut_level <= min(n, MAX_CUT_LEVEL):
        raise ValueError(f"cut level must lie in [0, {min(n, MAX_CUT_LEVEL)}], got {cut_level}")
    seeds = []
    for letters in itertools.product("IXYZ", repeat=cut_level):
        seed = "".join(letters)
        if prefix_feasible(structure, cut_level, x_mask(seed)):
            seeds.append(seed)
    return ForestPlan(n, cut_level, workers, tuple(seeds), structure)


def seed_subtree(prefix: str, n: int, structure: Structure = GENERAL) -> TreeState:
    """State the sequential walk would hold after descending along ``prefix``."""
    if prefix:
        parse_pauli(prefix)
    if len(prefix) > n:
        raise ValueError(f"prefix {prefix!r} longer than n={n}")
    state = _new_state(n, structure)
    for level, letter in enumerate(reversed(prefix)):
        _update(letter, level, state)
    return state


def _walk_seed(src, structure, seed, prune_tol) -> WalkResult:
    state = seed_subtree(seed, src.n, structure)
    return walk(src, structure, state, prune_tol=prune_tol)


_worker_args = None


def _init_process_worker(src, structure, prune_tol):
    global _worker_args
    _worker_args = (src, structure, prune_tol)


def _process_seed(seed):
    src, structure, prune_tol = _worker_args
    return _walk_seed(src, structure, seed, prune_tol)


@dataclass
class ForestRun:
    decomposition: Decomposition
    plan: ForestPlan
    tasks_done: int = 0
    leaves: int = 0
    op_count: int = 0
    per_seed_leaves: dict[str, int] = field(default_factory=dict)


def run_forest(src, structure: Structure = GENERAL, workers: int = 1,
               cut_level: int | None = None, *, executor: str = "thread",
               prune_tol: float = DEFAULT_PRUNE_TOL) -> ForestRun:
    """Walk every subtree of the forest on a pool and merge the results.

    ``executor`` is ``"thread"`` (shared source, any source type) or
    ``"process"`` (source must pickle). ``op_count`` sums the write counters
    of all subtree walks, seeding included.
    """
    src = as_source(src)
    structure.check_size(src.n)
    plan = plan_forest(src.n, workers, cut_level, structure)

    if executor == "thread":
        pool: Executor = ThreadPoolExecutor(max_workers=workers)
        submit = lambda seed: pool.submit(_walk_seed, src, structure, seed, prune_tol)  # noqa: E731
    elif executor == "process":
        pool = ProcessPoolExecutor(
            max_workers=min(workers, os.cpu_count() or 1),
            initializer=_init_process_worker,
            initargs=(src, structure, prune_tol),
        )
        submit = lambda seed: pool.submit(_process_seed, seed)  # noqa: E731
    else:
        raise ValueError(f"unknown executor {executor!r}")

    results: dict[str, WalkResult] = {}
    with pool:
        futures = {seed: submit(seed) for seed in plan.seeds}
        for seed, future in futures.items():
            try:
                results[seed] = future.result()
            except Exception as exc:
                for other in futures.values():
                    other.cancel()
                raise DecompositionError(f"subtree {seed or '<root>'} failed: {exc}") from exc

    terms = []
    run = ForestRun(Decomposition(src.n), plan)
    for seed in plan.seeds:
        res = results[seed]
        terms.extend(res.terms)
        run.tasks_done += 1
        run.leaves += res.leaves
        run.op_count += res.op_count
        run.per_seed_leaves[seed] = res.leaves
    terms.sort(key=lambda t: t[0])
    run.decomposition = Decomposition.pruned(src.n, terms, prune_tol)
    return run


def decompose_parallel(src, structure: Structure = GENERAL, workers: int = 1,
                       cut_level: int | None = None, *, executor: str = "thread",
                       prune_tol: float = DEFAULT_PRUNE_TOL) -> Decomposition:
    """Same coefficients as the sequential walk, computed on ``workers`` workers."""
    return run_forest(src, structure, workers, cut_level, executor=executor,
                      prune_tol=prune_tol).decomposition
