"""Whale optimization, the bat algorithm and their WOA-BAT hybrid, with
benchmark suites and an experiment harness."""

from .analysis import rank_by_mean, summarize_runs, win_count
from .core import Bounds, RandomStream
from .objectives import ObjectiveSpec, cec2019_suite, classical_suite, get_objective, get_suite
from .optimizers import (
    AlgorithmConfig,
    BatOptimizer,
    RunResult,
    WhaleOptimizer,
    WOABatOptimizer,
    bat_optimize,
    woa_optimize,
    woabat_optimize,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig", "BatOptimizer", "Bounds", "ObjectiveSpec", "RandomStream", "RunResult",
    "WhaleOptimizer", "WOABatOptimizer", "bat_optimize", "cec2019_suite", "classical_suite",
    "get_objective", "get_suite", "rank_by_mean", "summarize_runs", "win_count", "woa_optimize",
    "woabat_optimize",
]
