"""Command-line entry point: ``mnep gen|solve|verify|bench``.

Exit codes: 0 success, 1 verification rejected, 2 parse or validation
failure, 3 size guard tripped, 4 internal invariant breach.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import io
from .errors import InfiniteRayError, InstanceError, InvariantError, NotABasisError, SizeGuardError

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INVALID = 2
EXIT_TOO_LARGE = 3
EXIT_INTERNAL = 4


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _solve(instance, algo: str):
    from .arrangement import arrangement_solve
    from .lemke import lemke_solve
    from .verify import brute_force_solve

    start = time.perf_counter()
    meta = {"algorithm": algo}
    if algo == "lemke":
        state, trace = lemke_solve(instance)
        meta.update(trace.summary())
    elif algo == "arrangement":
        state = arrangement_solve(instance)
    else:
        state = brute_force_solve(instance)
    meta["elapsed"] = round(time.perf_counter() - start, 6)
    return state, meta


def cmd_gen(args) -> int:
    from .generate import gen_manhattan

    instance = gen_manhattan(args.n, args.classes, args.seed)
    io.write_instance(args.output, instance)
    return EXIT_OK


def cmd_solve(args) -> int:
    from .verify import verify_equilibrium

    instance = io.read_instance(args.input)
    state, meta = _solve(instance, args.algo)
    report = verify_equilibrium(instance, state)
    if not report.accepted:
        for line in report.lines():
            print(line, file=sys.stderr)
        raise InvariantError(f"{args.algo} produced a state the verifier rejects")
    io.write_solution(args.output, instance, state, meta)
    pivots = ""
    if "pivots" in meta:
        pivots = f", {meta['pivots']} pivot{'' if meta['pivots'] == 1 else 's'}"
    print(f"{args.algo}: verified equilibrium written to {args.output}{pivots}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify_equilibrium

    instance = io.read_instance(args.input)
    state = io.read_solution(args.solution, instance)
    report = verify_equilibrium(instance, state)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.accepted else EXIT_REJECTED


def cmd_bench(args) -> int:
    from .bench import run_bench

    def progress(row):
        print(f"classes={row.classes} grid={row.grid}x{row.grid}: mean pivots {row.mean_pivots:.1f}, "
              f"{row.wall_seconds:.1f}s, {'complete' if row.complete else 'INCOMPLETE'}", file=sys.stderr)

    report = run_bench(args.grids, args.classes, args.seeds, args.first_seed,
                       jobs=args.jobs, progress=progress)
    text = report.render()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(row.complete for row in report.rows) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mnep", description="Exact multiclass network equilibrium solvers.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random grid instance")
    p.add_argument("--n", type=int, required=True, help="grid side")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="compute and verify an equilibrium")
    p.add_argument("--algo", choices=("lemke", "arrangement", "brute"), default="lemke")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-s", "--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="pivot counts and timings on random grids")
    p.add_argument("--grids", type=_int_list, default=[2, 4, 6, 8])
    p.add_argument("--classes", type=_int_list, default=[2, 3, 4])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes per cell")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SizeGuardError as exc:
        print(f"error: instance too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InvariantError, InfiniteRayError, NotABasisError, AssertionError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
