# %% [markdown]
# # Skipping branches for structured matrices
#
# A diagonal matrix only has I/Z strings, an anti-diagonal one only X/Y
# strings, and a band matrix only strings whose X/Y mask is small enough.
# The structured walk prunes every other branch before descending into it.

# %%
import numpy as np

from pauli_tree import (
    DIAGONAL,
    TRIDIAGONAL,
    DiagonalSource,
    band,
    decompose_general,
    decompose_structured,
    predicted_op_count,
    walk,
)
from pauli_tree.sources import BandSource
from pauli_tree.structure import band_bound, support_size

cz = DiagonalSource([1, 1, 1, -1])
print(dict(decompose_structured(cz, DIAGONAL)))

# %%
# A random tridiagonal matrix at n = 5: the structured walk reads only the
# (n + 1) 2^n strings that can be nonzero and matches the general walk.
n = 5
rng = np.random.default_rng(1)
a = rng.normal(size=(32, 32))
i, j = np.indices(a.shape)
a[np.abs(i - j) > 1] = 0
fast = walk(a, TRIDIAGONAL)
print("leaves:", fast.leaves, "of", 4**n, " ops:", fast.op_count, "vs", predicted_op_count(n))
print("agrees:", fast.decomposition().max_abs_difference(decompose_general(a)) < 1e-14)

# %%
# Wider bands: support size against the (s n - c(s)) 2^n bound.
for s in (2, 3, 4):
    print(s, support_size(band(s), n), band_bound(s, n))

# %%
b = rng.normal(size=a.shape)
b[np.abs(i - j) > 3] = 0
src = BandSource.from_dense(b, 3)
print(len(decompose_structured(src, band(3))))
