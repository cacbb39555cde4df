# %% [markdown]
# # Block-encoding a Hermitian matrix
#
# With real coefficients a_i, prepare sum sqrt(|a_i|/lam)|i>, apply each Pauli
# controlled on its ancilla pattern (with the sign of a_i), and unprepare.
# The top-left block of the circuit is A / lam with lam = sum |a_i|.

# %%
import numpy as np

from pauli_tree import (
    Decomposition,
    build_lcu_circuit,
    circuit_to_json,
    decompose_general,
    verify_block_encoding,
)

rng = np.random.default_rng(3)
h = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
h = (h + h.conj().T) / 2

circuit = build_lcu_circuit(decompose_general(h))
print("lambda", circuit.lam, "ancillas", circuit.n_ancilla, circuit.gate_counts())

# %%
report = verify_block_encoding(circuit, h)
print(f"residual {report.residual:.1e}, unitarity defect {report.unitarity_defect:.1e}")

# %%
# A single Pauli block-encodes itself exactly.
x = Decomposition(2, {"XY": 1.0})
print(verify_block_encoding(build_lcu_circuit(x), x.to_matrix()).residual)

# %%
print(circuit_to_json(build_lcu_circuit(x)))
