import numpy as np
import pytest

from conftest import random_hermitian, random_matrix
from pauli_tree import (
    Decomposition,
    build_lcu_circuit,
    circuit_from_json,
    circuit_to_json,
    decompose_general,
    hermitian_augment,
    simulate,
    verify_block_encoding,
)
from pauli_tree.block_encoding import ControlledPauli, prep_unitary


def test_prep_first_column():
    a = np.array([0.3, 0.0, 1.2, 0.5])
    u = prep_unitary(a)
    np.testing.assert_allclose(u[:, 0], a / np.linalg.norm(a), atol=1e-15)
    np.testing.assert_allclose(u.T @ u, np.eye(4), atol=1e-14)
    np.testing.assert_array_equal(prep_unitary([2.0, 0.0]), np.eye(2))
    with pytest.raises(ValueError):
        prep_unitary([0.0, 0.0])
    with pytest.raises(ValueError):
        prep_unitary([-1.0, 1.0])


def test_circuit_shape():
    dec = Decomposition(2, {"II": 0.5, "XZ": -0.25, "ZZ": 1.0})
    circuit = build_lcu_circuit(dec)
    assert circuit.n_ancilla == 2 and circuit.lam == 1.75
    assert circuit.gate_counts() == {"prep": 1, "controlled_pauli": 3, "unprep": 1}
    cps = [g for g in circuit.gates if isinstance(g, ControlledPauli)]
    assert [(g.pattern, g.pauli, g.sign) for g in cps] == [("00", "II", 1), ("01", "XZ", -1), ("10", "ZZ", 1)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_hermitian(rng, n):
    a = random_hermitian(rng, n)
    report = verify_block_encoding(build_lcu_circuit(decompose_general(a)), a)
    assert report.residual <= 1e-10 and report.unitarity_defect <= 1e-12 and report.ok()


@pytest.mark.parametrize("pauli", ["X", "Y", "ZY", "XYZ"])
def test_bare_pauli_exact(pauli):
    dec = Decomposition(len(pauli), {pauli: 1.0})
    circuit = build_lcu_circuit(dec)
    assert circuit.n_ancilla == 0
    assert verify_block_encoding(circuit, dec.to_matrix()).residual == 0.0


def test_negative_single_term():
    dec = Decomposition(1, {"Z": -2.0})
    report = verify_block_encoding(build_lcu_circuit(dec), dec.to_matrix())
    assert report.lam == 2.0 and report.residual == 0.0


def test_complex_rejected_then_augmented(rng):
    a = random_matrix(rng, 2)
    dec = decompose_general(a)
    with pytest.raises(ValueError, match="hermitian_augment"):
        build_lcu_circuit(dec)
    aug = hermitian_augment(dec)
    report = verify_block_encoding(build_lcu_circuit(aug), aug.to_matrix())
    assert report.residual <= 1e-10


def test_empty_rejected():
    with pytest.raises(ValueError):
        build_lcu_circuit(Decomposition(1))


def test_simulation_ceiling(rng):
    circuit = build_lcu_circuit(decompose_general(random_hermitian(rng, 2)))
    with pytest.raises(ValueError):
        simulate(circuit, max_qubits=3)


def test_json_round_trip(rng):
    a = random_hermitian(rng, 2)
    circuit = build_lcu_circuit(decompose_general(a))
    back = circuit_from_json(circuit_to_json(circuit))
    assert back.n_data == 2 and back.lam == circuit.lam
    assert back.gate_counts() == circuit.gate_counts()
    np.testing.assert_array_equal(simulate(back), simulate(circuit))
    with pytest.raises(ValueError):
        circuit_from_json('{"n_data": 1}')
