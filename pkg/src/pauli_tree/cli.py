"""Command line front end: ``pauli-tree <subcommand> ...``.

Exit status is 0 on success, 1 when an input fails to load or a check fails,
and 2 on a usage error. Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import algebra
from .bench import run_bench
from .block_encoding import build_lcu_circuit, circuit_to_json, verify_block_encoding
from .decompose import walk
from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .io import (
    autodetect_structure,
    format_decomposition,
    read_decomposition,
    read_matrix,
    write_decomposition,
    write_matrix,
)
from .parallel import decompose_parallel
from .pauli import MAX_DENSE_QUBITS
from .sources import check_structure
from .structure import parse_structure

__all__ = ["main", "build_parser"]


class CliError(Exception):
    """Reported on stderr with exit status 1."""


def _structure_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        return parse_structure(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return list(range(a, b + 1))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _emit_decomposition(dec: Decomposition, out) -> None:
    if out is None:
        sys.stdout.write(format_decomposition(dec))
    else:
        write_decomposition(dec, out)


def _is_decomposition_file(path) -> bool:
    with open(path, encoding="utf-8", errors="replace") as fh:
        return fh.readline().lstrip().startswith("# pauli-decomposition")


def cmd_decompose(args) -> int:
    src = read_matrix(args.matrix, args.format)
    if args.structure == "auto":
        structure = autodetect_structure(src)
    else:
        structure = args.structure
        structure.check_size(src.n)
        if not check_structure(src, structure):
            raise CliError(f"{args.matrix}: matrix has entries outside {structure}")
    print(f"n={src.n} structure={structure}", file=sys.stderr)
    if args.threads > 1 or args.cut_level:
        dec = decompose_parallel(src, structure, args.threads, args.cut_level,
                                 prune_tol=args.prune_tol)
    else:
        dec = walk(src, structure, prune_tol=args.prune_tol).decomposition(args.prune_tol)
    _emit_decomposition(dec, args.output)
    return 0


def cmd_compose(args) -> int:
    dec = read_decomposition(args.decomposition)
    write_matrix(dec.to_matrix(args.max_qubits), args.output, args.format)
    return 0


def cmd_verify(args) -> int:
    dec = read_decomposition(args.decomposition)
    src = read_matrix(args.matrix, args.format)
    if dec.n != src.n:
        raise CliError(f"decomposition has n={dec.n}, matrix has n={src.n}")
    residual = float(np.max(np.abs(dec.to_matrix(args.max_qubits) - src.to_dense())))
    ok = residual <= args.tol
    print(f"max residual {residual:.3e} ({'ok' if ok else 'FAIL'}, tol {args.tol:g})")
    return 0 if ok else 1


def cmd_sum(args) -> int:
    a, b = read_decomposition(args.a), read_decomposition(args.b)
    _emit_decomposition(algebra.linear_combination(args.mu, a, b, args.prune_tol), args.output)
    return 0


def cmd_mul(args) -> int:
    a, b = read_decomposition(args.a), read_decomposition(args.b)
    _emit_decomposition(algebra.product(a, b, args.prune_tol), args.output)
    return 0


def cmd_dirsum(args) -> int:
    a, b = read_decomposition(args.a), read_decomposition(args.b)
    _emit_decomposition(algebra.direct_sum(a, b, args.prune_tol), args.output)
    return 0


def cmd_blockdiag(args) -> int:
    blocks = [read_decomposition(p) for p in args.blocks]
    _emit_decomposition(algebra.block_diagonal(blocks, args.prune_tol), args.output)
    return 0


def cmd_augment(args) -> int:
    dec = read_decomposition(args.decomposition)
    _emit_decomposition(algebra.hermitian_augment(dec, args.prune_tol), args.output)
    return 0


def cmd_block_encode(args) -> int:
    if _is_decomposition_file(args.input):
        dec = read_decomposition(args.input)
        target = None
    else:
        target = read_matrix(args.input)
        dec = walk(target, autodetect_structure(target)).decomposition()
    circuit = build_lcu_circuit(dec)
    Path(args.output).write_text(circuit_to_json(circuit) + "\n", encoding="utf-8")
    print(f"lambda {circuit.lam:.17g}, {len(dec)} terms, {circuit.n_ancilla} ancilla qubits")
    if args.verify:
        if target is None:
            target = dec.to_matrix(args.max_qubits)
        report = verify_block_encoding(circuit, target, args.max_qubits)
        ok = report.ok(args.tol)
        print(f"residual {report.residual:.3e}, unitarity defect {report.unitarity_defect:.3e}"
              f" ({'ok' if ok else 'FAIL'})")
        return 0 if ok else 1
    return 0


def cmd_bench(args) -> int:
    def progress(row):
        print(f"n={row.n} {row.structure} threads={row.threads} "
              f"{row.wall_time_seconds:.3f}s ops={row.op_count}", file=sys.stderr)

    report = run_bench(args.n_range, args.structures, args.threads, args.cut_level,
                       args.executor, progress)
    if args.output is None:
        sys.stdout.write(report.to_csv())
    else:
        report.write_csv(args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pauli-tree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def out_opt(p, required=False, help="output decomposition file (default: stdout)"):
        p.add_argument("-o", "--output", required=required, help=help)

    def tol_opt(p):
        p.add_argument("--prune-tol", type=float, default=DEFAULT_PRUNE_TOL,
                       help="drop terms with |c| <= T (0 keeps all nonzero terms)")

    def dense_opt(p):
        p.add_argument("--max-qubits", type=int, default=MAX_DENSE_QUBITS,
                       help="ceiling for dense reconstruction")

    p = sub.add_parser("decompose", help="Pauli decomposition of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--format", choices=["matrix-market", "dense-csv"])
    p.add_argument("--structure", type=_structure_arg, default="auto",
                   help="auto, general, diagonal, antidiagonal, tridiagonal or band=S")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--cut-level", type=int, default=None)
    tol_opt(p)
    out_opt(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", help="dense matrix from a decomposition")
    p.add_argument("decomposition")
    p.add_argument("--format", choices=["matrix-market", "dense-csv"])
    out_opt(p, True, "output matrix file (.mtx or .csv)")
    dense_opt(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="compare a decomposition with a matrix")
    p.add_argument("decomposition")
    p.add_argument("matrix")
    p.add_argument("--format", choices=["matrix-market", "dense-csv"])
    p.add_argument("--tol", type=float, default=1e-10)
    dense_opt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sum", help="mu*A + B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mu", type=complex, default=1.0)
    tol_opt(p)
    out_opt(p)
    p.set_defaults(func=cmd_sum)

    for name, func, help in (("mul", cmd_mul, "matrix product A B"),
                             ("dirsum", cmd_dirsum, "direct sum A (+) B")):
        p = sub.add_parser(name, help=help)
        p.add_argument("a")
        p.add_argument("b")
        tol_opt(p)
        out_opt(p)
        p.set_defaults(func=func)

    p = sub.add_parser("blockdiag", help="block diagonal of several decompositions")
    p.add_argument("blocks", nargs="+")
    tol_opt(p)
    out_opt(p)
    p.set_defaults(func=cmd_blockdiag)

    p = sub.add_parser("augment", help="Hermitian [[0, A^*], [A, 0]]")
    p.add_argument("decomposition")
    tol_opt(p)
    out_opt(p)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("block-encode", help="LCU circuit for a Hermitian matrix")
    p.add_argument("input", help="decomposition file or matrix file")
    out_opt(p, True, "circuit JSON file")
    p.add_argument("--verify", action="store_true", help="simulate and check the block")
    p.add_argument("--tol", type=float, default=1e-10)
    dense_opt(p)
    p.set_defaults(func=cmd_block_encode)

    p = sub.add_parser("bench", help="time decompositions of generated matrices")
    p.add_argument("--n-range", type=_n_range, required=True, help="A..B")
    p.add_argument("--structures", type=_structure_arg, nargs="+", default=[parse_structure("general")])
    p.add_argument("--threads", type=_positive, nargs="+", default=[1])
    p.add_argument("--cut-level", type=int, default=None)
    p.add_argument("--executor", choices=["thread", "process"], default="thread")
    out_opt(p, help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "bench" and "auto" in args.structures:
        parser.print_usage(sys.stderr)
        print("pauli-tree bench: error: --structures needs explicit classes", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"pauli-tree {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
