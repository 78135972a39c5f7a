"""Experiment orchestration: plan expansion, seeded runs, aggregation and export.

A plan names a suite, an optional function filter, algorithms, an
:class:`~woabat.optimizers.AlgorithmConfig`, a run count and a base seed.
Every run gets its own seed derived from the base seed and a stable hash of
``(function, algorithm, run index)``, so adding a function or an algorithm
to a plan never changes the numbers of the other cells.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import os
import platform
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import ResultsMatrix, StatSummary, summarize_runs
from .core import InvalidConfigError
from .objectives import ObjectiveSpec, TransformData, get_objective, get_suite, shifted_wrap
from .optimizers import OPTIMIZERS, AlgorithmConfig, RunResult

CSV_COLUMNS = ("suite", "function", "algorithm", "dim", "pop", "iters", "runs", "base_seed",
               "mean", "std", "best", "worst", "median", "elapsed_ms")
TRACE_COLUMNS = ("iteration", "best_fitness")
BUILTIN_SUITES = ("classical", "cec2019")
WORKERS_ENV = "SWARM_OPT_WORKERS"
_U64 = 2 ** 64


class ExportError(OSError):
    """A report or trace could not be written; ``path`` names the target."""

    def __init__(self, path, reason):
        self.path = str(path)
        super().__init__(f"cannot write {self.path}: {reason}")


def _tool_version() -> str:
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version("artifact")
    except PackageNotFoundError:  # running from a source tree
        return "0+unknown"


def derive_seed(base_seed: int, function_id: str, algorithm: str, run: int) -> int:
    """``base_seed`` plus a stable 64-bit hash of the cell coordinates, modulo 2**64."""
    key = f"{function_id}|{algorithm}|{run}".encode()
    h = int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")
    return (int(base_seed) + h) % _U64


def resolve_workers(requested: int | None = None) -> int:
    """Explicit request, else ``$SWARM_OPT_WORKERS``, else the machine's core count."""
    if requested is not None:
        workers = requested
    elif os.environ.get(WORKERS_ENV, "").strip():
        raw = os.environ[WORKERS_ENV]
        try:
            workers = int(raw)
        except ValueError:
            raise InvalidConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    else:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise InvalidConfigError(f"worker count must be positive, got {workers}")
    return workers


# -- custom suites -----------------------------------------------------------

def load_custom_suite(path) -> list[ObjectiveSpec]:
    """Objectives from a JSON file.

    Format::

        {"functions": [
            {"id": "S1", "base_suite": "classical", "base_function": "F9",
             "dim": 10, "shift": [...], "rotation": [[...], ...], "bias": 100.0},
            ...]}

    ``shift``, ``rotation`` and ``bias`` are optional (no shift, no rotation,
    zero bias); ``dim`` defaults to the base function's catalog dimension.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        entries = data["functions"]
        if not isinstance(entries, list) or not entries:
            raise ValueError("'functions' must be a nonempty list")
    except FileNotFoundError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidConfigError(f"{path}: malformed suite file ({exc})") from None
    specs = []
    for i, entry in enumerate(entries):
        try:
            base = get_objective(entry["base_suite"], entry["base_function"], entry.get("dim"))
            dim = base.dimension
            shift = entry.get("shift", [0.0] * dim)
            t = TransformData(dimension=dim, shift=shift, rotation=entry.get("rotation"),
                              bias=float(entry.get("bias", 0.0)))
            specs.append(shifted_wrap(base, t, id=str(entry["id"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfigError(f"{path}: function entry {i}: {exc}") from None
    ids = [s.id for s in specs]
    if len(set(ids)) != len(ids):
        raise InvalidConfigError(f"{path}: duplicate function ids")
    return specs


# -- plan ---------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentPlan:
    suite: str = "classical"
    functions: tuple | None = None
    algorithms: tuple = ("woa",)
    config: AlgorithmConfig = field(default_factory=AlgorithmConfig)
    runs: int = 30
    base_seed: int = 0
    dim: int | None = None
    trace: bool = False
    suite_file: str | None = None  # required when suite == "custom"

    def __post_init__(self):
        if self.functions is not None:
            object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if isinstance(self.config, dict):
            object.__setattr__(self, "config", AlgorithmConfig.from_dict(self.config))

    def validate(self) -> "ExperimentPlan":
        if isinstance(self.runs, bool) or not isinstance(self.runs, (int, np.integer)) or self.runs < 1:
            raise InvalidConfigError(f"runs must be a positive integer, got {self.runs!r}")
        if not isinstance(self.base_seed, (int, np.integer)) or not 0 <= self.base_seed < _U64:
            raise InvalidConfigError(f"base_seed must be a 64-bit unsigned integer, got {self.base_seed!r}")
        if self.dim is not None and (not isinstance(self.dim, (int, np.integer)) or self.dim < 1):
            raise InvalidConfigError(f"dim must be a positive integer, got {self.dim!r}")
        if not self.algorithms:
            raise InvalidConfigError("select at least one algorithm")
        unknown = [a for a in self.algorithms if a not in OPTIMIZERS]
        if unknown:
            raise InvalidConfigError(f"unknown algorithm(s) {unknown}; choose from {sorted(OPTIMIZERS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise InvalidConfigError("duplicate algorithm names")
        if self.suite == "custom":
            if not self.suite_file:
                raise InvalidConfigError("a custom suite needs suite_file")
        elif self.suite not in BUILTIN_SUITES:
            raise InvalidConfigError(f"unknown suite {self.suite!r}; choose from "
                                     f"{list(BUILTIN_SUITES) + ['custom']}")
        if self.functions is not None and not self.functions:
            raise InvalidConfigError("function filter is empty")
        self.config.validate()
        self.objectives()
        return self

    def objectives(self) -> list[ObjectiveSpec]:
        """The selected objectives, in catalog order (or filter order if given)."""
        if self.suite == "custom":
            catalog = load_custom_suite(self.suite_file)
            if self.dim is not None:
                warnings.warn("dim is ignored for custom suites", stacklevel=2)
        else:
            catalog = get_suite(self.suite)
        by_id = {s.id: s for s in catalog}
        if self.functions is None:
            chosen = catalog
        else:
            unknown = [f for f in self.functions if f not in by_id]
            if unknown:
                raise InvalidConfigError(f"unknown function id(s) {unknown} in suite {self.suite!r}")
            if len(set(self.functions)) != len(self.functions):
                raise InvalidConfigError("duplicate function ids in filter")
            chosen = [by_id[f] for f in self.functions]
        if self.dim is None or self.suite == "custom":
            return list(chosen)
        out, fixed = [], []
        for spec in chosen:
            if spec.resizable:
                out.append(spec.with_dimension(self.dim))
            else:
                out.append(spec)
                if spec.dimension != self.dim:
                    fixed.append(spec.id)
        if fixed:
            warnings.warn(f"dim={self.dim} ignored for fixed-dimension functions: {', '.join(fixed)}",
                          stacklevel=2)
        return out

    def to_dict(self) -> dict:
        return {"suite": self.suite, "functions": list(self.functions) if self.functions else None,
                "algorithms": list(self.algorithms), "config": self.config.to_dict(),
                "runs": int(self.runs), "base_seed": int(self.base_seed), "dim": self.dim,
                "trace": bool(self.trace), "suite_file": self.suite_file}

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentPlan":
        known = {"suite", "functions", "algorithms", "config", "runs", "base_seed", "dim", "trace",
                 "suite_file"}
        unknown = set(d) - known
        if unknown:
            raise InvalidConfigError(f"unknown plan fields: {sorted(unknown)}")
        d = dict(d)
        if "config" in d:
            d["config"] = AlgorithmConfig.from_dict(d["config"] or {})
        return cls(**d)


def load_plan(path) -> ExperimentPlan:
    """Read a JSON plan file whose keys mirror :class:`ExperimentPlan`."""
    try:
        data = json.loads(Path(path).read_text())
    except ValueError as exc:
        raise InvalidConfigError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InvalidConfigError(f"{path}: plan must be a JSON object")
    return ExperimentPlan.from_dict(data)


# -- report -------------------------------------------------------------------

@dataclass(frozen=True)
class RunRecord:
    run: int
    seed: int
    best_fitness: float
    best_position: tuple
    evaluations: int
    elapsed: float
    trace: tuple | None = None

    @classmethod
    def from_result(cls, run: int, result: RunResult, keep_trace: bool) -> "RunRecord":
        trace = tuple(float(v) for v in result.trace.best_so_far) if keep_trace else None
        return cls(run, int(result.seed), float(result.best_fitness),
                   tuple(float(v) for v in result.best_position), int(result.evaluations),
                   float(result.elapsed), trace)

    def to_dict(self) -> dict:
        return {"run": self.run, "seed": self.seed, "best_fitness": self.best_fitness,
                "best_position": list(self.best_position), "evaluations": self.evaluations,
                "elapsed": self.elapsed, "trace": list(self.trace) if self.trace is not None else None}

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        trace = d.get("trace")
        return cls(int(d["run"]), int(d["seed"]), float(d["best_fitness"]),
                   tuple(float(v) for v in d["best_position"]), int(d["evaluations"]),
                   float(d["elapsed"]), tuple(float(v) for v in trace) if trace is not None else None)


@dataclass(frozen=True)
class Cell:
    function: str
    algorithm: str
    dim: int
    summary: StatSummary
    runs: tuple

    @property
    def elapsed_ms(self) -> float:
        return 1000.0 * sum(r.elapsed for r in self.runs)


@dataclass(frozen=True)
class ExperimentReport:
    plan: ExperimentPlan
    cells: tuple
    provenance: dict

    def cell(self, function: str, algorithm: str) -> Cell:
        for c in self.cells:
            if c.function == function and c.algorithm == algorithm:
                return c
        raise KeyError((function, algorithm))

    @property
    def functions(self) -> list[str]:
        return list(dict.fromkeys(c.function for c in self.cells))

    @property
    def algorithms(self) -> list[str]:
        return list(dict.fromkeys(c.algorithm for c in self.cells))

    def results_matrix(self) -> ResultsMatrix:
        means = [[self.cell(f, a).summary.mean for a in self.algorithms] for f in self.functions]
        return ResultsMatrix(self.functions, self.algorithms, np.array(means))

    def to_dict(self) -> dict:
        return {
            "plan": self.plan.to_dict(),
            "provenance": dict(self.provenance),
            "cells": [{"function": c.function, "algorithm": c.algorithm, "dim": c.dim,
                       "summary": c.summary.to_dict(), "runs": [r.to_dict() for r in c.runs]}
                      for c in self.cells],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        cells = tuple(
            Cell(c["function"], c["algorithm"], int(c["dim"]), StatSummary(**c["summary"]),
                 tuple(RunRecord.from_dict(r) for r in c["runs"]))
            for c in d["cells"])
        return cls(ExperimentPlan.from_dict(d["plan"]), cells, dict(d["provenance"]))


def _execute(task):
    spec, algorithm, config, run, seed, keep_trace = task
    result = OPTIMIZERS[algorithm](spec, config, seed)
    return RunRecord.from_result(run, result, keep_trace)


def run_experiment(plan: ExperimentPlan, workers: int | None = 1) -> ExperimentReport:
    """Run every (function, algorithm, run) of ``plan`` and aggregate per cell.

    ``workers`` > 1 spreads runs over processes; results do not depend on it.
    ``None`` resolves through :func:`resolve_workers`.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        plan.validate()
    workers = resolve_workers(workers)
    objectives = plan.objectives()

    tasks = []
    for spec in objectives:
        for alg in plan.algorithms:
            for r in range(plan.runs):
                tasks.append((spec, alg, plan.config, r,
                              derive_seed(plan.base_seed, spec.id, alg, r), plan.trace))
    seeds = [t[4] for t in tasks]
    if len(set(seeds)) != len(seeds):  # 64-bit hash; never expected in practice
        raise InvalidConfigError("derived seeds collide; choose another base_seed")

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            records = list(pool.map(_execute, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_execute(t) for t in tasks]

    cells, i = [], 0
    for spec in objectives:
        for alg in plan.algorithms:
            runs = tuple(records[i:i + plan.runs])
            i += plan.runs
            cells.append(Cell(spec.id, alg, spec.dimension,
                              summarize_runs([r.best_fitness for r in runs]), runs))
    provenance = {
        "tool_version": _tool_version(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "std_denominator": "n-1",
    }
    return ExperimentReport(plan, tuple(cells), provenance)


# -- export ---------------------------------------------------------------------

def csv_rows(report: ExperimentReport) -> list[dict]:
    plan = report.plan
    suite = plan.suite if plan.suite != "custom" else f"custom:{plan.suite_file}"
    rows = []
    for c in report.cells:
        s = c.summary
        rows.append({"suite": suite, "function": c.function, "algorithm": c.algorithm,
                     "dim": c.dim, "pop": plan.config.population, "iters": plan.config.iterations,
                     "runs": plan.runs, "base_seed": plan.base_seed, "mean": repr(s.mean),
                     "std": repr(s.std), "best": repr(s.best), "worst": repr(s.worst),
                     "median": repr(s.median), "elapsed_ms": f"{c.elapsed_ms:.3f}"})
    return rows


def _write_text(path: Path, text: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(path, exc.strerror or exc) from exc


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def export_report(report: ExperimentReport, path, format: str = "csv") -> None:
    """Write ``report`` as the summary CSV or as a lossless JSON document."""
    path = Path(path)
    if format == "csv":
        text = _csv_text(CSV_COLUMNS, csv_rows(report))
    elif format == "json":
        text = json.dumps(report.to_dict(), indent=1) + "\n"
    else:
        raise ValueError(f"unknown format {format!r}; choose csv or json")
    _write_text(path, text)


def load_report(path) -> ExperimentReport:
    """Inverse of ``export_report(..., format="json")``."""
    return ExperimentReport.from_dict(json.loads(Path(path).read_text()))


def export_trace(trace, path) -> None:
    """Write a convergence trace (a RunResult, RunRecord or sequence) as CSV."""
    if isinstance(trace, RunResult):
        values = trace.trace.best_so_far
    elif isinstance(trace, RunRecord):
        if trace.trace is None:
            raise ValueError("run record carries no trace; plan the experiment with trace=True")
        values = trace.trace
    else:
        values = trace
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("trace is empty")
    rows = [{"iteration": i, "best_fitness": repr(float(v))} for i, v in enumerate(values)]
    _write_text(Path(path), _csv_text(TRACE_COLUMNS, rows))
