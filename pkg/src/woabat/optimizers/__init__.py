"""WOA, the bat algorithm and the WOA-BAT hybrid."""

from ._base import (
    AlgorithmConfig,
    BaseSwarmOptimizer,
    ConvergenceTrace,
    HybridMode,
    IterationState,
    RunResult,
    SearchAgent,
    greedy_accept,
)
from .bat import (
    BatOptimizer,
    bat_frequency,
    bat_local_walk,
    bat_optimize,
    bat_velocity_position,
    decay_loudness,
    pulse_rate,
)
from .woa import WhaleOptimizer, woa_encircle_update, woa_optimize, woa_search_update, woa_spiral_update
from .woabat import WOABatOptimizer, woabat_optimize

OPTIMIZERS = {"woa": woa_optimize, "bat": bat_optimize, "woa-bat": woabat_optimize}
ESTIMATORS = {"woa": WhaleOptimizer, "bat": BatOptimizer, "woa-bat": WOABatOptimizer}


def get_optimizer(name: str):
    try:
        return OPTIMIZERS[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {sorted(OPTIMIZERS)}") from None


__all__ = [
    "AlgorithmConfig", "BaseSwarmOptimizer", "ConvergenceTrace", "HybridMode", "IterationState",
    "RunResult", "SearchAgent", "greedy_accept", "BatOptimizer", "bat_frequency",
    "bat_local_walk", "bat_optimize", "bat_velocity_position", "decay_loudness", "pulse_rate",
    "WhaleOptimizer", "woa_encircle_update", "woa_optimize", "woa_search_update",
    "woa_spiral_update", "WOABatOptimizer", "woabat_optimize", "OPTIMIZERS", "ESTIMATORS",
    "get_optimizer",
]
