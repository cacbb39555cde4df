# %% [markdown]
# # Combining decompositions without dense matrices
#
# Direct sums, block diagonals, linear combinations, products and the
# Hermitian augmentation all act on coefficient maps directly.

# %%
import numpy as np

from pauli_tree import (
    block_diagonal,
    decompose_general,
    direct_sum,
    hermitian_augment,
    linear_combination,
    product,
)

rng = np.random.default_rng(2)
a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
b = rng.normal(size=(4, 4))
da, db = decompose_general(a), decompose_general(b)

z = np.zeros_like(a)
checks = {
    "A (+) B": (direct_sum(da, db), np.block([[a, z], [z, b]])),
    "diag(A, B, A)": (block_diagonal([da, db, da]),
                      np.block([[a, z, z, z], [z, b, z, z], [z, z, a, z], [z, z, z, z]])),
    "2A + B": (linear_combination(2, da, db), 2 * a + b),
    "A B": (product(da, db), a @ b),
}
for name, (dec, dense) in checks.items():
    print(f"{name:14s} max error {np.max(np.abs(dec.to_matrix() - dense)):.1e}")

# %%
# [[0, A^*], [A, 0]] is Hermitian, so its coefficients are real; it has at
# most twice as many terms as A.
aug = hermitian_augment(da)
print(len(da), "->", len(aug), "terms; all real:", all(c.imag == 0 for c in aug.values()))
