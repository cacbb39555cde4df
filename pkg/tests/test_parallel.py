import numpy as np
import pytest

from conftest import random_matrix
from pauli_tree import (
    DIAGONAL,
    GENERAL,
    TRIDIAGONAL,
    DecompositionError,
    FunctionSource,
    band,
    compose,
    decompose_general,
    decompose_parallel,
    plan_forest,
    run_forest,
    walk,
)
from pauli_tree.parallel import default_cut_level, seed_subtree
from pauli_tree.sources import DenseSource
from pauli_tree.structure import support_size


def test_default_cut_level():
    assert default_cut_level(10, 1) == 2
    assert default_cut_level(10, 4) == 3
    assert default_cut_level(2, 64) == 2


def test_plan_seeds_sorted_and_complete():
    plan = plan_forest(5, 2, 2)
    assert len(plan.seeds) == plan.subtree_count == 16
    assert list(plan.seeds) == sorted(plan.seeds)
    with pytest.raises(ValueError):
        plan_forest(3, 1, 4)
    with pytest.raises(ValueError):
        plan_forest(3, 0, 1)


def test_plan_skips_infeasible_seeds():
    assert plan_forest(4, 1, 2, DIAGONAL).seeds == ("II", "IZ", "ZI", "ZZ")
    # tridiagonal at depth 1 allows everything; at depth 2 the mask 01 is out
    assert len(plan_forest(4, 1, 2, TRIDIAGONAL).seeds) == 12


def test_seed_state_matches_sequential_descent():
    state = seed_subtree("XZ", 3)
    assert state.depth == 2 and state.pauli() == "XZ"
    want = compose("XZ")
    assert state.columns()[:4].tolist() == want.k.tolist()
    assert state.m[:4].tolist() == want.m.tolist()


@pytest.mark.parametrize("workers", [1, 2, 4])
@pytest.mark.parametrize("cut", [0, 1, 2, 3])
def test_bit_identical(rng, workers, cut):
    a = random_matrix(rng, 5)
    assert list(decompose_parallel(a, GENERAL, workers, cut).items()) == list(decompose_general(a).items())


@pytest.mark.parametrize("structure", [DIAGONAL, TRIDIAGONAL, band(3)])
def test_structured_forest(rng, structure):
    n = 5
    a = random_matrix(rng, n)
    i, j = np.indices(a.shape)
    if structure == DIAGONAL:
        a[i != j] = 0
    else:
        a[np.abs(i - j) > structure.s] = 0
    src = DenseSource(a)
    run = run_forest(src, structure, 2, 2)
    assert run.decomposition == walk(src, structure).decomposition()
    assert run.leaves == support_size(structure, n)
    assert run.tasks_done == len(run.plan.seeds)


def test_process_executor(rng):
    a = random_matrix(rng, 4)
    assert decompose_parallel(a, GENERAL, 2, 1, executor="process") == decompose_general(a)


def test_worker_failure_surfaces():
    def fn(rows, cols):
        if np.any(cols == 5):
            raise RuntimeError("boom")
        return np.zeros(len(rows))

    with pytest.raises(DecompositionError):
        decompose_parallel(FunctionSource(3, fn), GENERAL, 2, 1)


def test_unknown_executor(rng):
    with pytest.raises(ValueError):
        decompose_parallel(random_matrix(rng, 2), GENERAL, 1, 0, executor="gpu")
