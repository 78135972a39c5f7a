"""Command-line front end.

Exit codes: 0 success, 1 usage error (bad flags or flag values), 2 runtime
error (malformed input files, failed writes, optimizer errors).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import MalformedInputError, friedman_statistic, rank_by_mean, read_results, win_count
from .core import InvalidConfigError
from .harness import (
    BUILTIN_SUITES,
    ExperimentPlan,
    export_report,
    export_trace,
    resolve_workers,
    run_experiment,
)
from .objectives import get_suite
from .optimizers import OPTIMIZERS, AlgorithmConfig

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; this tool reserves 2 for runtime errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return f"{x:.6g}"


def _table(header, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned 64-bit integer, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed out of range [0, 2**64): {text}")
    return value


def _add_run_flags(p):
    p.add_argument("--suite", required=True, choices=BUILTIN_SUITES)
    p.add_argument("--function", action="append", metavar="ID", dest="functions",
                   help="restrict to this function id (repeatable)")
    p.add_argument("--dim", type=_positive_int, help="dimension of the resizable functions")
    p.add_argument("--pop", type=_positive_int, default=30)
    p.add_argument("--iters", type=_positive_int, default=500)
    p.add_argument("--runs", type=_positive_int, default=30)
    p.add_argument("--seed", type=_seed, help="base seed; drawn from system entropy if omitted")
    p.add_argument("--out", type=Path, help="write the report here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--trace", action="store_true",
                   help="also write per-run convergence traces next to --out")
    p.add_argument("--workers", type=_positive_int,
                   help="worker processes (default: $SWARM_OPT_WORKERS or the core count)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="woabat", description="WOA, bat and WOA-BAT benchmark runner.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list-functions", help="list a benchmark suite")
    p.add_argument("--suite", required=True, choices=BUILTIN_SUITES)

    p = sub.add_parser("run", help="run one algorithm over a suite")
    p.add_argument("--algorithm", required=True, choices=sorted(OPTIMIZERS))
    _add_run_flags(p)

    p = sub.add_parser("compare", help="run several algorithms and compare means")
    p.add_argument("--algorithms", required=True, help="comma-separated, e.g. woa,woa-bat")
    _add_run_flags(p)

    p = sub.add_parser("rank", help="rank algorithms from a results file")
    p.add_argument("--input", required=True, type=Path,
                   help="harness CSV/JSON export or a function,algorithm,mean CSV")
    return parser


def cmd_list_functions(args, out) -> int:
    rows = []
    for s in get_suite(args.suite):
        lo, hi = s.bounds.lower, s.bounds.upper
        rng = f"[{_fmt(lo[0])}, {_fmt(hi[0])}]" if np.ptp(lo) == 0 and np.ptp(hi) == 0 else "mixed"
        rows.append([s.id, s.name, s.dimension, rng, _fmt(s.known_min), s.modality.value])
    print(_table(["id", "name", "dim", "range", "known_min", "modality"], rows), file=out)
    return EXIT_OK


def _plan(args, algorithms, err) -> ExperimentPlan:
    seed = args.seed
    plan = ExperimentPlan(
        suite=args.suite, functions=args.functions, algorithms=tuple(algorithms),
        config=AlgorithmConfig(population=args.pop, iterations=args.iters),
        runs=args.runs, base_seed=0 if seed is None else seed, dim=args.dim, trace=args.trace)
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        plan = dataclasses.replace(plan, base_seed=seed)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            plan.validate()
    except (InvalidConfigError, KeyError) as exc:
        raise UsageError(exc.args[0] if exc.args else str(exc)) from None
    for w in caught:
        print(f"warning: {w.message}", file=err)
    if args.trace and args.out is None:
        raise UsageError("--trace needs --out")
    if args.out is not None and not args.out.parent.exists():
        raise UsageError(f"output directory does not exist: {args.out.parent}")
    return plan


def _trace_path(out: Path, function: str, algorithm: str, run: int) -> Path:
    return out.with_name(f"{out.stem}_trace_{function}_{algorithm}_{run}.csv")


def _execute(args, plan, out, err):
    try:
        workers = resolve_workers(args.workers)
    except InvalidConfigError as exc:
        raise UsageError(str(exc)) from None
    print(f"base seed: {plan.base_seed}", file=err if args.seed is not None else out)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # already reported by _plan
        report = run_experiment(plan, workers=workers)
    if args.out is not None:
        export_report(report, args.out, args.format)
        if args.trace:
            for cell in report.cells:
                for rec in cell.runs:
                    export_trace(rec, _trace_path(args.out, cell.function, cell.algorithm, rec.run))
    return report


def cmd_run(args, out, err) -> int:
    plan = _plan(args, [args.algorithm], err)
    report = _execute(args, plan, out, err)
    rows = [[c.function, c.dim, _fmt(c.summary.mean), _fmt(c.summary.std), _fmt(c.summary.best),
             _fmt(c.summary.worst)] for c in report.cells]
    print(_table(["function", "dim", "mean", "std", "best", "worst"], rows), file=out)
    return EXIT_OK


def cmd_compare(args, out, err) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    if len(algorithms) < 2:
        raise UsageError("--algorithms needs at least two names")
    unknown = [a for a in algorithms if a not in OPTIMIZERS]
    if unknown:
        raise UsageError(f"unknown algorithm(s) {unknown}; choose from {sorted(OPTIMIZERS)}")
    # a repeated name (self-comparison) runs once and is compared with itself
    plan = _plan(args, list(dict.fromkeys(algorithms)), err)
    report = _execute(args, plan, out, err)
    m = report.results_matrix()
    cols = [m.column(a) for a in algorithms]
    rows = [[f] + [_fmt(c[i]) for c in cols] for i, f in enumerate(m.functions)]
    print(_table(["function"] + [f"{a} mean" for a in algorithms], rows), file=out)
    first = algorithms[0]
    for other in algorithms[1:]:
        w, t, l = win_count(m.column(first), m.column(other))
        print(f"{first} vs {other}: wins {w}, ties {t}, losses {l}", file=out)
    return EXIT_OK


def cmd_rank(args, out) -> int:
    matrix = read_results(args.input)
    ranks = rank_by_mean(matrix)
    rows = [[f] + [_fmt(r) for r in row] for f, row in zip(matrix.functions, ranks.per_function_ranks)]
    rows.append(["sum"] + [_fmt(v) for v in ranks.per_algorithm_sum])
    rows.append(["overall"] + [_fmt(v) for v in ranks.overall_rank])
    print(_table(["function"] + list(matrix.algorithms), rows), file=out)
    if len(matrix.functions) >= 2 and len(matrix.algorithms) >= 2:
        print(f"Friedman chi-square: {_fmt(friedman_statistic(ranks))}", file=out)
    else:
        print("Friedman chi-square: n/a (needs at least 2 functions and 2 algorithms)", file=out)
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list-functions":
            return cmd_list_functions(args, out)
        if args.command == "run":
            return cmd_run(args, out, err)
        if args.command == "compare":
            return cmd_compare(args, out, err)
        return cmd_rank(args, out)
    except UsageError as exc:
        parser.print_usage(err)
        print(f"woabat: error: {exc}", file=err)
        return EXIT_USAGE
    except (MalformedInputError, OSError, ValueError, RuntimeError) as exc:
        print(f"woabat: error: {exc}", file=err)
        return EXIT_RUNTIME


def entry_point():  # console script
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
