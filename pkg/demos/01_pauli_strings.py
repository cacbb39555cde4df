# %% [markdown]
# # Pauli strings in sparse form
#
# Every Pauli string has exactly one nonzero per row. Its sparse form stores
# the column `k[j]` and a sign `m[j]` for each row, plus the global phase
# `(-i)^n_Y` that comes from writing Y as `-i` times a real matrix.

# %%
import numpy as np

from pauli_tree import compose, string_product
from pauli_tree.pauli import PAULI_MATRICES, dense

op = compose("XZ")  # sigma_1 = X, sigma_0 = Z: the leftmost letter is most significant
print("k =", op.k, " m =", op.m, " n_Y =", op.n_y)

# %%
# The sparse form agrees with the Kronecker product.
kron = np.kron(PAULI_MATRICES["X"], PAULI_MATRICES["Z"])
print(np.array_equal(dense(op), kron))

# %%
# A Y contributes a phase: compose("Y") has m = [1, -1] and phase -i.
y = compose("Y")
print(y.phase, dense(y))

# %%
# Products of strings are letterwise, with the phases collected.
prod = string_product("XY", "YX")
print(prod.pauli, prod.phase)
