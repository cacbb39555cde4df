# %% [markdown]
# # Files and the command line
#
# Matrices come in as Matrix Market or CSV; decompositions are plain text
# with 17 significant digits, so they round-trip exactly. The same steps are
# available as `pauli-tree` subcommands.

# %%
import tempfile
from pathlib import Path

import numpy as np

from pauli_tree import read_decomposition, write_matrix
from pauli_tree.cli import main

tmp = Path(tempfile.mkdtemp())
cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=float)
write_matrix(cnot, tmp / "cnot.mtx")

# %%
# pauli-tree decompose cnot.mtx -o cnot.pauli
main(["decompose", str(tmp / "cnot.mtx"), "-o", str(tmp / "cnot.pauli")])
print((tmp / "cnot.pauli").read_text())

# %%
# pauli-tree verify cnot.pauli cnot.mtx
print("exit", main(["verify", str(tmp / "cnot.pauli"), str(tmp / "cnot.mtx")]))
print(dict(read_decomposition(tmp / "cnot.pauli")))

# %%
# pauli-tree bench --n-range 2..5 --structures general diagonal
main(["bench", "--n-range", "2..5", "--structures", "general", "diagonal",
      "-o", str(tmp / "bench.csv")])
print((tmp / "bench.csv").read_text())
