"""Run statistics, win counts, rank tables and the Friedman statistic."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class MalformedInputError(ValueError):
    """A results file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, text: str | None = None):
        self.line = line
        self.text = text
        where = f" (line {line}: {text!r})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class StatSummary:
    mean: float
    std: float
    best: float
    worst: float
    median: float
    n: int

    def to_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "best": self.best, "worst": self.worst,
                "median": self.median, "n": self.n}


def summarize_runs(fitnesses) -> StatSummary:
    """Mean, sample standard deviation (n - 1), best, worst and median.

    >>> summarize_runs([0.0, 2.0]).std  # doctest: +ELLIPSIS
    1.414...
    """
    x = np.asarray(fitnesses, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("cannot summarize an empty sample")
    std = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    # keep mean inside [min, max] despite rounding on near-constant samples
    mean = float(np.clip(np.mean(x), x.min(), x.max()))
    return StatSummary(mean=mean, std=std, best=float(x.min()), worst=float(x.max()),
                       median=float(np.median(x)), n=int(x.size))


@dataclass(frozen=True)
class ResultsMatrix:
    """Mean results, one row per function and one column per algorithm."""

    functions: tuple
    algorithms: tuple
    means: np.ndarray

    def __post_init__(self):
        means = np.array(self.means, dtype=float, ndmin=2)
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "means", means)
        if means.shape != (len(self.functions), len(self.algorithms)):
            raise ValueError(f"means has shape {means.shape}, expected "
                             f"({len(self.functions)}, {len(self.algorithms)})")
        if len(set(self.functions)) != len(self.functions):
            raise ValueError("duplicate function ids")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ValueError("duplicate algorithm names")
        if not np.all(np.isfinite(means)):
            raise ValueError("means must be finite")

    def column(self, algorithm: str) -> np.ndarray:
        return self.means[:, self.algorithms.index(algorithm)]


@dataclass(frozen=True)
class RankTable:
    functions: tuple
    algorithms: tuple
    per_function_ranks: np.ndarray
    per_algorithm_sum: np.ndarray
    overall_rank: np.ndarray


def _average_ranks(row: np.ndarray) -> np.ndarray:
    order = np.argsort(row, kind="stable")
    ranks = np.empty(len(row))
    i = 0
    while i < len(row):
        j = i
        while j + 1 < len(row) and row[order[j + 1]] == row[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def rank_by_mean(matrix: ResultsMatrix) -> RankTable:
    """Rank algorithms per function (1 = lowest mean, ties share the average rank)."""
    ranks = np.array([_average_ranks(row) for row in matrix.means]).reshape(matrix.means.shape)
    total = ranks.sum(axis=0)
    return RankTable(matrix.functions, matrix.algorithms, ranks, total, total / len(matrix.functions))


def friedman_statistic(ranks: RankTable) -> float:
    """Friedman chi-square: 12N / (k (k + 1)) * sum(Rbar_j^2) - 3N (k + 1)."""
    N, k = ranks.per_function_ranks.shape
    if N < 2 or k < 2:
        raise ValueError(f"need at least 2 functions and 2 algorithms, got {N} x {k}")
    mean_ranks = ranks.per_function_ranks.mean(axis=0)
    stat = 12.0 * N / (k * (k + 1)) * float(np.sum(mean_ranks ** 2)) - 3.0 * N * (k + 1)
    # the two terms cancel exactly when all mean ranks are equal; drop rounding residue
    return max(stat, 0.0) if abs(stat) > 1e-9 * N * (k + 1) else 0.0


def win_count(a_means, b_means) -> tuple[int, int, int]:
    """(wins, ties, losses) of ``a`` against ``b``; lower is better."""
    a = np.asarray(a_means, dtype=float).ravel()
    b = np.asarray(b_means, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return int(np.sum(a < b)), int(np.sum(a == b)), int(np.sum(a > b))


# -- reading result files ---------------------------------------------------

def results_matrix_from_records(records) -> ResultsMatrix:
    """Build a matrix from ``(function, algorithm, mean)`` triples in first-seen order."""
    functions, algorithms, cells = [], [], {}
    for fid, alg, mean in records:
        if fid not in functions:
            functions.append(fid)
        if alg not in algorithms:
            algorithms.append(alg)
        if (fid, alg) in cells:
            raise ValueError(f"duplicate entry for ({fid}, {alg})")
        cells[(fid, alg)] = mean
    missing = [(f, a) for f in functions for a in algorithms if (f, a) not in cells]
    if missing:
        raise ValueError(f"missing entries: {missing[:5]}")
    means = [[cells[(f, a)] for a in algorithms] for f in functions]
    return ResultsMatrix(functions, algorithms, np.array(means, dtype=float))


def read_results_csv(path) -> ResultsMatrix:
    """Read a long-format CSV with at least ``function``, ``algorithm`` and ``mean`` columns.

    Harness exports qualify as-is; hand-entered tables may carry just those
    three columns. Lines starting with ``#`` are comments.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        lines = [(i, line) for i, line in enumerate(fh, start=1)
                 if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise MalformedInputError(f"{path}: no data")
    header_no, header_line = lines[0]
    header = next(csv.reader([header_line]))
    header = [h.strip() for h in header]
    for col in ("function", "algorithm", "mean"):
        if col not in header:
            raise MalformedInputError(f"{path}: header lacks column {col!r}", header_no,
                                      header_line.rstrip("\n"))
    fi, ai, mi = header.index("function"), header.index("algorithm"), header.index("mean")
    records = []
    for no, line in lines[1:]:
        row = next(csv.reader([line]))
        try:
            if len(row) != len(header):
                raise ValueError(f"expected {len(header)} fields, got {len(row)}")
            mean = float(row[mi])
            if not np.isfinite(mean):
                raise ValueError("mean is not finite")
            records.append((row[fi].strip(), row[ai].strip(), mean))
        except ValueError as exc:
            raise MalformedInputError(f"{path}: {exc}", no, line.rstrip("\n")) from None
    try:
        return results_matrix_from_records(records)
    except ValueError as exc:
        raise MalformedInputError(f"{path}: {exc}") from None


def read_results(path) -> ResultsMatrix:
    """Read a results matrix from a harness CSV/JSON export or a hand-entered CSV."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(path.read_text())
            records = [(c["function"], c["algorithm"], float(c["summary"]["mean"]))
                       for c in data["cells"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedInputError(f"{path}: not a results report ({exc})") from None
        try:
            return results_matrix_from_records(records)
        except ValueError as exc:
            raise MalformedInputError(f"{path}: {exc}") from None
    return read_results_csv(path)
