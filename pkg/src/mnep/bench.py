"""Grid benchmark: mean pivot counts and timings per (classes, grid) cell."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import mean
from typing import Iterable, Sequence

from .generate import ALPHA_RANGE, BETA_RANGE, DEMAND_RANGE, LATTICE, gen_manhattan, grid_graph
from .io import dumps, solution_to_dict
from .kernels import get_backend
from .lemke import lemke_solve
from .verify import verify_equilibrium


@dataclass
class InstanceResult:
    seed: int
    pivots: int = 0
    pivot_seconds: float = 0.0
    inversion_seconds: float = 0.0
    wall_seconds: float = 0.0
    omega_zero: bool = False
    verified: bool = False
    rational: bool = False
    invariants_ok: bool = False
    bases_visited: int = 0
    distinct_bases: int = 0
    document: str | None = None  # serialized solution, kept for re-verification
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.omega_zero and self.verified


@dataclass
class BenchRow:
    classes: int
    grid: int
    vertices: int
    arcs: int
    results: list[InstanceResult] = field(default_factory=list)

    @property
    def seeds(self) -> int:
        return len(self.results)

    @property
    def complete(self) -> bool:
        return bool(self.results) and all(r.ok for r in self.results)

    def _mean(self, attr: str) -> float:
        done = [getattr(r, attr) for r in self.results if r.error is None]
        return mean(done) if done else float("nan")

    @property
    def mean_pivots(self) -> float:
        return self._mean("pivots")

    @property
    def mean_pivot_seconds(self) -> float:
        return self._mean("pivot_seconds")

    @property
    def mean_inversion_seconds(self) -> float:
        return self._mean("inversion_seconds")

    @property
    def wall_seconds(self) -> float:
        return sum(r.wall_seconds for r in self.results)


@dataclass
class BenchReport:
    rows: list[BenchRow]
    backend: str

    def header(self) -> list[str]:
        lo, hi = ALPHA_RANGE
        blo, bhi = BETA_RANGE
        dlo, dhi = DEMAND_RANGE
        return [
            "# Manhattan grid benchmark (exact Lemke pivoting)",
            f"# arithmetic backend: {self.backend}",
            f"# alpha uniform on [{lo}, {hi}], beta uniform on [{blo}, {bhi}], both on a 1/{LATTICE} lattice",
            "# origin/destination: distinct vertices drawn uniformly",
            f"# demand: uniform integer in [{dlo}, {dhi}]",
            "# pivot time covers the pivoting loop; inversion time covers building the initial tableau",
        ]

    def table(self) -> str:
        cols = ("Classes", "Grid", "Vertices", "Arcs", "Pivots", "Pivot time (s)",
                "Inversion (s)", "Seeds", "omega=0", "Verified", "Status")
        lines = ["| " + " | ".join(cols) + " |", "|" + "|".join("---" for _ in cols) + "|"]
        for row in self.rows:
            ok_omega = sum(r.omega_zero for r in row.results)
            ok_ver = sum(r.verified for r in row.results)
            lines.append("| " + " | ".join([
                str(row.classes), f"{row.grid} x {row.grid}", str(row.vertices), str(row.arcs),
                f"{row.mean_pivots:.1f}", f"{row.mean_pivot_seconds:.3f}",
                f"{row.mean_inversion_seconds:.3f}", str(row.seeds),
                f"{ok_omega}/{row.seeds}", f"{ok_ver}/{row.seeds}",
                "complete" if row.complete else "INCOMPLETE",
            ]) + " |")
        return "\n".join(lines)

    def failures(self) -> list[str]:
        out = []
        for row in self.rows:
            for r in row.results:
                if not r.ok:
                    out.append(f"classes={row.classes} grid={row.grid} seed={r.seed}: "
                               f"{r.error or 'not a verified equilibrium'}")
        return out

    def render(self) -> str:
        parts = self.header() + ["", self.table()]
        fails = self.failures()
        if fails:
            parts += ["", "Failures:"] + [f"- {f}" for f in fails]
        return "\n".join(parts) + "\n"


def run_instance(n: int, classes: int, seed: int, backend: str | None = None) -> InstanceResult:
    result = InstanceResult(seed)
    start = time.perf_counter()
    try:
        instance = gen_manhattan(n, classes, seed)
        state, trace = lemke_solve(instance, get_backend(backend))
        result.pivots = trace.pivots
        result.pivot_seconds = trace.pivot_seconds
        result.inversion_seconds = trace.inversion_seconds
        result.omega_zero = state.omega == 0
        result.verified = verify_equilibrium(instance, state).accepted
        result.rational = all(isinstance(v, Fraction) for v in state.values())
        result.invariants_ok = trace.all_feasible and trace.all_complementary and trace.size_constant
        result.bases_visited = len(trace.digests)
        result.distinct_bases = len(set(trace.digests))
        result.document = dumps(solution_to_dict(instance, state, trace.summary()))
    except Exception as exc:  # recorded per instance, the cell is marked incomplete
        result.error = f"{type(exc).__name__}: {exc}"
    result.wall_seconds = time.perf_counter() - start
    return result


def run_cell(n: int, classes: int, seeds: Iterable[int], backend: str | None = None,
             jobs: int = 1) -> BenchRow:
    seeds = list(seeds)
    vertices, arcs = grid_graph(n)
    row = BenchRow(classes, n, len(vertices), len(arcs))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            row.results = list(pool.map(run_instance, [n] * len(seeds), [classes] * len(seeds),
                                        seeds, [backend] * len(seeds)))
    else:
        row.results = [run_instance(n, classes, s, backend) for s in seeds]
    return row


def run_bench(grids: Sequence[int], classes: Sequence[int], seeds: int = 5, first_seed: int = 0,
              backend: str | None = None, jobs: int = 1, progress=None) -> BenchReport:
    rows = []
    for k in classes:
        for n in grids:
            row = run_cell(n, k, range(first_seed, first_seed + seeds), backend, jobs)
            if progress is not None:
                progress(row)
            rows.append(row)
    return BenchReport(rows, get_backend(backend).name)
