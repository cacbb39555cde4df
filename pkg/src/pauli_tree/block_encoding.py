"""LCU block-encoding of a Hermitian matrix from its Pauli decomposition.

The circuit is prepare / select / unprepare over ``m`` ancilla qubits (the
more significant register) and ``n`` data qubits:

* ``Prep`` maps ``|0^m>`` to ``sum_i sqrt(|a_i| / lam) |i>``,
* one controlled Pauli per term, firing on ancilla pattern ``i`` and carrying
  ``sign(a_i)``,
* ``Unprep`` is ``Prep^*``.

The top-left ``2^n x 2^n`` block of the circuit unitary is then ``A / lam``
with ``lam = sum_i |a_i|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .pauli import MAX_DENSE_QUBITS, compose, parse_pauli
from .sources import as_source

__all__ = [
    "Prep",
    "ControlledPauli",
    "Unprep",
    "Circuit",
    "BlockEncodingReport",
    "prep_unitary",
    "build_lcu_circuit",
    "simulate",
    "verify_block_encoding",
    "circuit_to_json",
    "circuit_from_json",
    "REAL_TOL",
]

REAL_TOL = DEFAULT_PRUNE_TOL


@dataclass(frozen=True, eq=False)
class Prep:
    matrix: np.ndarray


@dataclass(frozen=True)
class ControlledPauli:
    pattern: str  # m bits, first bit = most significant ancilla
    pauli: str
    sign: int = 1


@dataclass(frozen=True)
class Unprep:
    pass


@dataclass
class Circuit:
    n_data: int
    n_ancilla: int
    lam: float
    gates: list = field(default_factory=list)

    @property
    def n_qubits(self) -> int:
        return self.n_data + self.n_ancilla

    def gate_counts(self) -> dict[str, int]:
        counts = {"prep": 0, "controlled_pauli": 0, "unprep": 0}
        for gate in self.gates:
            counts[_gate_type(gate)] += 1
        return counts

    def prep(self) -> Prep:
        for gate in self.gates:
            if isinstance(gate, Prep):
                return gate
        raise ValueError("circuit has no Prep gate")


def _gate_type(gate) -> str:
    if isinstance(gate, Prep):
        return "prep"
    if isinstance(gate, ControlledPauli):
        return "controlled_pauli"
    if isinstance(gate, Unprep):
        return "unprep"
    raise TypeError(f"unknown gate {gate!r}")


def prep_unitary(amplitudes) -> np.ndarray:
    """Real orthogonal matrix whose first column is ``amplitudes / |amplitudes|``.

    Built as the Householder reflection taking ``e_0`` to the target vector;
    the identity when the target already is ``e_0``.
    """
    a = np.asarray(amplitudes, dtype=float)
    if a.ndim != 1 or len(a) == 0:
        raise ValueError("amplitudes must be a non-empty vector")
    if np.any(a < 0):
        raise ValueError("amplitudes must be non-negative")
    norm = np.linalg.norm(a)
    if norm == 0:
        raise ValueError("amplitudes are all zero")
    a = a / norm
    v = -a
    v[0] += 1.0
    vv = v @ v
    out = np.eye(len(a))
    if vv > 0:
        out -= (2.0 / vv) * np.outer(v, v)
    return out


def build_lcu_circuit(dec: Decomposition, real_tol: float = REAL_TOL) -> Circuit:
    """LCU circuit for a decomposition with real coefficients.

    Terms map to ancilla patterns in sorted key order; unused patterns get no
    gate. Complex coefficients are rejected: augment the decomposition to a
    Hermitian one first.
    """
    if len(dec) == 0:
        raise ValueError("cannot block-encode an empty decomposition")
    keys = list(dec)
    coeffs = []
    for key in keys:
        c = dec[key]
        if abs(c.imag) > real_tol:
            raise ValueError(
                f"coefficient of {key} is complex ({c}); block-encode the "
                "hermitian_augment of the decomposition instead"
            )
        coeffs.append(c.real)
    coeffs = np.array(coeffs)
    if np.any(coeffs == 0):
        raise ValueError("zero coefficients cannot be block-encoded")
    m = (len(keys) - 1).bit_length()
    lam = float(np.sum(np.abs(coeffs)))
    amplitudes = np.zeros(1 << m)
    amplitudes[: len(keys)] = np.sqrt(np.abs(coeffs))
    prep = Prep(prep_unitary(amplitudes))
    gates: list = [prep]
    for i, (key, c) in enumerate(zip(keys, coeffs)):
        pattern = format(i, f"0{m}b") if m else ""
        gates.append(ControlledPauli(pattern, key, 1 if c > 0 else -1))
    gates.append(Unprep())
    return Circuit(dec.n, m, lam, gates)


def simulate(circuit: Circuit, max_qubits: int = MAX_DENSE_QUBITS) -> np.ndarray:
    """Dense unitary of the circuit, ancilla register most significant."""
    total = circuit.n_qubits
    if total > max_qubits:
        raise ValueError(f"refusing to simulate {total} qubits densely (limit {max_qubits})")
    n_anc = 1 << circuit.n_ancilla
    n_dat = 1 << circuit.n_data
    dim = n_anc * n_dat
    u = np.eye(dim, dtype=complex).reshape(n_anc, n_dat, dim)
    prep = None
    for gate in circuit.gates:
        if isinstance(gate, Prep):
            prep = gate.matrix
            u = np.einsum("ab,bjc->ajc", prep, u)
        elif isinstance(gate, Unprep):
            if prep is None:
                raise ValueError("Unprep without a preceding Prep")
            u = np.einsum("ab,bjc->ajc", prep.conj().T, u)
        else:
            if len(gate.pattern) != circuit.n_ancilla:
                raise ValueError(f"pattern {gate.pattern!r} does not have {circuit.n_ancilla} bits")
            parse_pauli(gate.pauli, circuit.n_data)
            block = int(gate.pattern, 2) if gate.pattern else 0
            op = compose(gate.pauli)
            # (P U)[j] = P[j, k_j] U[k_j]
            scale = (gate.sign * op.phase * op.m)[:, None]
            u[block] = scale * u[block][op.k]
    return u.reshape(dim, dim)


@dataclass
class BlockEncodingReport:
    lam: float
    residual: float
    unitarity_defect: float
    gate_counts: dict[str, int]
    n_ancilla: int

    def ok(self, residual_tol: float = 1e-10, unitarity_tol: float = 1e-12) -> bool:
        return self.residual <= residual_tol and self.unitarity_defect <= unitarity_tol


def verify_block_encoding(circuit: Circuit, src, max_qubits: int = MAX_DENSE_QUBITS) -> BlockEncodingReport:
    """Simulate the circuit and compare ``lam * block`` with the matrix.

    Both norms are spectral norms from a dense SVD.
    """
    src = as_source(src)
    if src.n != circuit.n_data:
        raise ValueError(f"matrix has n={src.n}, circuit has {circuit.n_data} data qubits")
    u = simulate(circuit, max_qubits)
    dim = u.shape[0]
    n_dat = 1 << circuit.n_data
    block = u[:n_dat, :n_dat]
    residual = float(np.linalg.norm(src.to_dense() - circuit.lam * block, 2))
    defect = float(np.linalg.norm(u.conj().T @ u - np.eye(dim), 2))
    return BlockEncodingReport(circuit.lam, residual, defect, circuit.gate_counts(), circuit.n_ancilla)


def _matrix_to_json(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a, dtype=complex)]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def circuit_to_json(circuit: Circuit) -> str:
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Prep):
            gates.append({"type": "prep", "matrix": _matrix_to_json(gate.matrix)})
        elif isinstance(gate, ControlledPauli):
            gates.append({"type": "controlled_pauli", "pattern": gate.pattern,
                          "pauli": gate.pauli, "sign": gate.sign})
        else:
            gates.append({"type": "unprep"})
    doc = {
        "n_data": circuit.n_data,
        "n_ancilla": circuit.n_ancilla,
        "lambda": circuit.lam,
        "gates": gates,
    }
    return json.dumps(doc, indent=1)


def circuit_from_json(text: str) -> Circuit:
    doc = json.loads(text)
    try:
        gates = []
        for g in doc["gates"]:
            kind = g["type"]
            if kind == "prep":
                gates.append(Prep(_matrix_from_json(g["matrix"])))
            elif kind == "controlled_pauli":
                sign = int(g.get("sign", 1))
                if sign not in (1, -1):
                    raise ValueError(f"sign must be +1 or -1, got {sign}")
                gates.append(ControlledPauli(g["pattern"], parse_pauli(g["pauli"]), sign))
            elif kind == "unprep":
                gates.append(Unprep())
            else:
                raise ValueError(f"unknown gate type {kind!r}")
        return Circuit(int(doc["n_data"]), int(doc["n_ancilla"]), float(doc["lambda"]), gates)
    except KeyError as exc:
        raise ValueError(f"circuit JSON is missing field {exc}") from None
