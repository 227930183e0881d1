"""Compare the compiled and pure-Python pivot kernels on random grid instances.

Usage: python benchmarks/bench_kernels.py [--grids 2,4,6] [--classes 2] [--seeds 3]

Both backends must produce the same pivot sequence and the same equilibrium;
the script reports per-cell mean times and the speed-up.
"""
from __future__ import annotations

import argparse
import time
from statistics import mean

from mnep.generate import gen_manhattan
from mnep.kernels import available, get_backend
from mnep.lemke import lemke_solve


def run(n: int, classes: int, seed: int, backend: str):
    instance = gen_manhattan(n, classes, seed)
    start = time.perf_counter()
    state, trace = lemke_solve(instance, get_backend(backend))
    return time.perf_counter() - start, state, trace


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grids", default="2,4,6")
    parser.add_argument("--classes", default="2")
    parser.add_argument("--seeds", type=int, default=3)
    args = parser.parse_args()
    if "compiled" not in available():
        raise SystemExit("compiled kernel not built; run `pip install --no-build-isolation -e .` first")

    print(f"{'classes':>7} {'grid':>5} {'pivots':>7} {'python (s)':>11} {'compiled (s)':>13} {'speed-up':>9}")
    for k in (int(v) for v in args.classes.split(",")):
        for n in (int(v) for v in args.grids.split(",")):
            py_t, c_t, pivots = [], [], []
            for seed in range(args.seeds):
                t_py, s_py, tr_py = run(n, k, seed, "python")
                t_c, s_c, tr_c = run(n, k, seed, "compiled")
                if [s.entering for s in tr_py.steps] != [s.entering for s in tr_c.steps] or s_py != s_c:
                    raise SystemExit(f"backends disagree on n={n}, classes={k}, seed={seed}")
                py_t.append(t_py)
                c_t.append(t_c)
                pivots.append(tr_c.pivots)
            print(f"{k:>7} {n:>5} {mean(pivots):>7.1f} {mean(py_t):>11.3f} {mean(c_t):>13.3f} "
                  f"{mean(py_t) / mean(c_t):>8.1f}x")


if __name__ == "__main__":
    main()
