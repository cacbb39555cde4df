import numpy as np
import pytest

from conftest import random_matrix
from pauli_tree import (
    Decomposition,
    block_diagonal,
    decompose_general,
    direct_sum,
    hermitian_augment,
    linear_combination,
    product,
)


def close(dec, dense, tol=1e-12):
    return dec.max_abs_difference(decompose_general(dense)) <= tol


@pytest.mark.parametrize("n", [1, 2, 3])
def test_direct_sum(rng, n):
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    z = np.zeros_like(a)
    assert close(direct_sum(decompose_general(a), decompose_general(b)), np.block([[a, z], [z, b]]))


def test_direct_sum_example():
    z = Decomposition(1, {"Z": 1})
    i = Decomposition(1, {"I": 1})
    # diag(Z, I) = diag(1, -1, 1, 1)
    assert dict(direct_sum(z, i)) == {"II": 0.5, "IZ": 0.5, "ZI": -0.5, "ZZ": 0.5}


@pytest.mark.parametrize("count", [1, 2, 3, 5])
def test_block_diagonal(rng, count):
    n = 2
    blocks = [random_matrix(rng, n) for _ in range(count)]
    size = 1 << n
    total = 1
    while total < count:
        total *= 2
    dense = np.zeros((total * size, total * size), dtype=complex)
    for i, blk in enumerate(blocks):
        dense[i * size:(i + 1) * size, i * size:(i + 1) * size] = blk
    got = block_diagonal([decompose_general(b) for b in blocks])
    assert got.n == n + (total - 1).bit_length()
    assert close(got, dense)


def test_linear_combination(rng):
    a, b = random_matrix(rng, 3), random_matrix(rng, 3)
    assert close(linear_combination(2 - 1j, decompose_general(a), decompose_general(b)), (2 - 1j) * a + b)
    da = decompose_general(a)
    assert len(linear_combination(-1, da, da)) == 0


def test_product(rng):
    a, b = random_matrix(rng, 2), random_matrix(rng, 2)
    assert close(product(decompose_general(a), decompose_general(b)), a @ b)
    xy = product(Decomposition(1, {"X": 1}), Decomposition(1, {"Y": 1}))
    assert dict(xy) == {"Z": 1j}


def test_hermitian_augment(rng):
    a = random_matrix(rng, 2)
    da = decompose_general(a)
    aug = hermitian_augment(da)
    dense = np.block([[np.zeros_like(a), a.conj().T], [a, np.zeros_like(a)]])
    assert close(aug, dense)
    assert all(c.imag == 0 for c in aug.values())
    assert len(aug) <= 2 * len(da)
    assert dict(hermitian_augment(Decomposition(1, {"Z": 1}))) == {"XZ": 1}


def test_size_mismatch():
    with pytest.raises(ValueError):
        direct_sum(Decomposition(1, {"I": 1}), Decomposition(2, {"II": 1}))
    with pytest.raises(ValueError):
        product(Decomposition(1), Decomposition(2))
    with pytest.raises(ValueError):
        block_diagonal([])
