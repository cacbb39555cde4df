import subprocess
import sys

import numpy as np
import pytest

from conftest import random_hermitian, random_matrix
from pauli_tree import read_decomposition, write_matrix
from pauli_tree.cli import main

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=float)


@pytest.fixture
def cnot(tmp_path):
    path = tmp_path / "cnot.mtx"
    write_matrix(CNOT, path)
    return path


def test_decompose_then_verify(tmp_path, cnot):
    out = tmp_path / "cnot.pauli"
    assert main(["decompose", str(cnot), "-o", str(out)]) == 0
    assert dict(read_decomposition(out)) == {"II": 0.5, "IX": 0.5, "ZI": 0.5, "ZX": -0.5}
    assert main(["verify", str(out), str(cnot)]) == 0


def test_verify_fails_on_wrong_matrix(tmp_path, cnot, capsys):
    out = tmp_path / "cnot.pauli"
    main(["decompose", str(cnot), "-o", str(out)])
    write_matrix(np.eye(4), tmp_path / "eye.mtx")
    assert main(["verify", str(out), str(tmp_path / "eye.mtx")]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_auto_structure_diagonal(tmp_path, capsys):
    write_matrix(np.diag([1.0, 2.0, -3.0, 0.5]), tmp_path / "diag.mtx")
    assert main(["decompose", str(tmp_path / "diag.mtx"), "--structure", "auto"]) == 0
    captured = capsys.readouterr()
    assert "structure=diagonal" in captured.err
    keys = [line.split()[0] for line in captured.out.splitlines()[1:]]
    assert keys and all(set(k) <= {"I", "Z"} for k in keys)


def test_explicit_structure_mismatch(tmp_path, cnot, capsys):
    assert main(["decompose", str(cnot), "--structure", "diagonal"]) == 1
    assert "outside diagonal" in capsys.readouterr().err


def test_parallel_output_identical(tmp_path, rng):
    write_matrix(random_matrix(rng, 4), tmp_path / "a.mtx")
    main(["decompose", str(tmp_path / "a.mtx"), "-o", str(tmp_path / "seq.pauli")])
    main(["decompose", str(tmp_path / "a.mtx"), "--threads", "3", "--cut-level", "2",
          "-o", str(tmp_path / "par.pauli")])
    main(["decompose", str(tmp_path / "a.mtx"), "-o", str(tmp_path / "again.pauli")])
    seq = (tmp_path / "seq.pauli").read_bytes()
    assert seq == (tmp_path / "par.pauli").read_bytes() == (tmp_path / "again.pauli").read_bytes()


def test_compose(tmp_path, cnot):
    main(["decompose", str(cnot), "-o", str(tmp_path / "c.pauli")])
    assert main(["compose", str(tmp_path / "c.pauli"), "-o", str(tmp_path / "back.csv")]) == 0
    assert main(["verify", str(tmp_path / "c.pauli"), str(tmp_path / "back.csv")]) == 0
    assert main(["compose", str(tmp_path / "c.pauli"), "-o", str(tmp_path / "x.csv"),
                 "--max-qubits", "1"]) == 1


def test_algebra_subcommands(tmp_path, rng):
    a, b = random_matrix(rng, 2), random_matrix(rng, 2)
    for name, m in (("a", a), ("b", b)):
        write_matrix(m, tmp_path / f"{name}.mtx")
        main(["decompose", str(tmp_path / f"{name}.mtx"), "--structure", "general",
              "-o", str(tmp_path / f"{name}.pauli")])
    pa, pb = str(tmp_path / "a.pauli"), str(tmp_path / "b.pauli")
    z = np.zeros_like(a)
    cases = [
        (["sum", pa, pb, "--mu", "2-1j"], (2 - 1j) * a + b),
        (["mul", pa, pb], a @ b),
        (["dirsum", pa, pb], np.block([[a, z], [z, b]])),
        (["blockdiag", pa, pb], np.block([[a, z], [z, b]])),
        (["augment", pa], np.block([[z, a.conj().T], [a, z]])),
    ]
    for i, (argv, dense) in enumerate(cases):
        out = tmp_path / f"r{i}.pauli"
        assert main(argv + ["-o", str(out)]) == 0
        write_matrix(dense, tmp_path / f"r{i}.mtx")
        assert main(["verify", str(out), str(tmp_path / f"r{i}.mtx")]) == 0, argv


def test_size_mismatch_is_validation_error(tmp_path, capsys):
    (tmp_path / "a.pauli").write_text("# pauli-decomposition n=1\nX 1 0\n")
    (tmp_path / "b.pauli").write_text("# pauli-decomposition n=2\nXX 1 0\n")
    assert main(["sum", str(tmp_path / "a.pauli"), str(tmp_path / "b.pauli")]) == 1
    assert "size mismatch" in capsys.readouterr().err


def test_block_encode(tmp_path, rng, capsys):
    write_matrix(random_hermitian(rng, 2), tmp_path / "h.mtx")
    out = tmp_path / "c.json"
    assert main(["block-encode", str(tmp_path / "h.mtx"), "-o", str(out), "--verify"]) == 0
    text = capsys.readouterr().out
    residual = float(text.split("residual ")[1].split(",")[0])
    assert residual <= 1e-10 and out.exists()


def test_block_encode_decomposition_and_complex(tmp_path, rng):
    write_matrix(random_matrix(rng, 2), tmp_path / "a.mtx")
    main(["decompose", str(tmp_path / "a.mtx"), "-o", str(tmp_path / "a.pauli")])
    assert main(["block-encode", str(tmp_path / "a.pauli"), "-o", str(tmp_path / "c.json")]) == 1
    main(["augment", str(tmp_path / "a.pauli"), "-o", str(tmp_path / "h.pauli")])
    assert main(["block-encode", str(tmp_path / "h.pauli"), "-o", str(tmp_path / "c.json"),
                 "--verify"]) == 0


def test_bench(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--n-range", "2..4", "--structures", "general", "diagonal",
                 "--threads", "1", "2", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("n,structure,threads,cut_level,wall_time_seconds,op_count,term_count,throughput")
    assert len(lines) == 1 + 3 * 2 * 2
    rows = [line.split(",") for line in lines[1:]]
    # single-threaded rows carry the instrumented count of one walk
    assert [r[5] for r in rows if r[2] == "1" and r[1] == "general"] == ["47", "367", "2927"]
    assert [r[5] for r in rows if r[2] == "1" and r[1] == "diagonal"] == ["12", "44", "172"]


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["decompose"],
    ["decompose", "x.mtx", "--structure", "band=0"],
    ["bench", "--n-range", "5..2"],
    ["bench", "--n-range", "2..3", "--structures", "auto"],
    ["decompose", "x.mtx", "--threads", "0"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_missing_file_is_exit_1(tmp_path, capsys):
    assert main(["decompose", str(tmp_path / "missing.mtx")]) == 1
    assert "error" in capsys.readouterr().err


def test_module_entry_point(tmp_path, cnot):
    result = subprocess.run([sys.executable, "-m", "pauli_tree", "decompose", str(cnot)],
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout.startswith("# pauli-decomposition n=2")
