"""Timing harness: decompose function-backed matrices over a range of sizes."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .decompose import walk
from .parallel import default_cut_level, run_forest
from .sources import FunctionSource
from .structure import GENERAL, Structure

__all__ = ["BenchRow", "BenchReport", "bench_source", "run_bench"]


@dataclass
class BenchRow:
    n: int
    structure: str
    threads: int
    cut_level: int
    wall_time_seconds: float
    op_count: int
    term_count: int
    throughput: float  # leaf coefficients per second
    leaves: int

    @property
    def work(self) -> int:
        """Counted array writes plus one matrix read per row of every leaf."""
        return self.op_count + (self.leaves << self.n)


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, [f.name for f in fields(BenchRow)], lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(asdict(row))
        return out.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())


def bench_source(n: int, structure: Structure = GENERAL) -> FunctionSource:
    """A deterministic dense-looking matrix, zeroed outside ``structure``."""

    def fn(rows, cols):
        out = ((rows * 7 + cols * 3) % 11 - 5).astype(np.complex128)
        out.imag = (rows ^ cols) % 5 - 2
        if structure.kind == "diagonal":
            out[rows != cols] = 0
        elif structure.kind == "antidiagonal":
            out[rows + cols != (1 << n) - 1] = 0
        elif structure.kind == "band":
            out[np.abs(rows - cols) > structure.s] = 0
        return out

    return FunctionSource(n, fn, structure)


def run_bench(n_values, structures=(GENERAL,), threads=(1,), cut_level: int | None = None,
              executor: str = "thread", progress=None) -> BenchReport:
    """One row per (n, structure, threads).

    A single thread runs the plain sequential walk, so its ``op_count`` is the
    instrumented counter of one tree walk. With more threads the forest is
    used and ``op_count`` adds up the subtree walks, seeding included.
    """
    rows = []
    for n in n_values:
        for structure in structures:
            for w in threads:
                src = bench_source(n, structure)
                t0 = time.perf_counter()
                if w == 1 and cut_level in (None, 0):
                    res = walk(src, structure)
                    terms, ops, leaves, cut = len(res.terms), res.op_count, res.leaves, 0
                else:
                    cut = default_cut_level(n, w) if cut_level is None else min(cut_level, n)
                    run = run_forest(src, structure, w, cut, executor=executor)
                    terms, ops, leaves = len(run.decomposition), run.op_count, run.leaves
                elapsed = time.perf_counter() - t0
                row = BenchRow(n, str(structure), w, cut, elapsed, ops, terms,
                               leaves / elapsed if elapsed > 0 else float("inf"), leaves)
                rows.append(row)
                if progress is not None:
                    progress(row)
    return BenchReport(rows)
