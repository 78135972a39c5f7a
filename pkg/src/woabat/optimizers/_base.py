from __future__ import annotations

import enum
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator

from ..core import InvalidConfigError, RandomStream, check_vector
from ..objectives import ObjectiveSpec


class HybridMode(str, enum.Enum):
    RAND_BEST_SUBSTITUTION = "rand_best_substitution"
    LITERAL = "literal"


# branch codes reported per agent per iteration
ENCIRCLE, SEARCH, SPIRAL = 0, 1, 2
BAT_FLIGHT, BAT_LOCAL = 3, 4


@dataclass(frozen=True)
class AlgorithmConfig:
    """Every tunable of WOA, the bat algorithm and WOA-BAT."""

    population: int = 30
    iterations: int = 500
    spiral_b: float = 1.0
    f_min: float = 0.0
    f_max: float = 2.0
    loudness_init: float = 1.0
    pulse_rate_init: float = 0.5
    alpha: float = 0.9
    gamma: float = 0.9
    hybrid_mode: HybridMode = HybridMode.RAND_BEST_SUBSTITUTION

    def __post_init__(self):
        object.__setattr__(self, "hybrid_mode", HybridMode(self.hybrid_mode))

    def validate(self) -> "AlgorithmConfig":
        for name in ("population", "iterations"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise InvalidConfigError(f"{name} must be a positive integer, got {value!r}")
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float) and not np.isfinite(value):
                raise InvalidConfigError(f"{f.name} must be finite")
        if not self.f_min < self.f_max:
            raise InvalidConfigError(f"f_min ({self.f_min}) must be below f_max ({self.f_max})")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.gamma <= 0:
            raise InvalidConfigError(f"gamma must be positive, got {self.gamma}")
        if self.loudness_init < 0:
            raise InvalidConfigError("loudness_init must be nonnegative")
        if not 0.0 <= self.pulse_rate_init <= 1.0:
            raise InvalidConfigError("pulse_rate_init must lie in [0, 1]")
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hybrid_mode"] = self.hybrid_mode.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AlgorithmConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise InvalidConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)


@dataclass(frozen=True)
class ConvergenceTrace:
    best_so_far: np.ndarray

    def __len__(self):
        return len(self.best_so_far)

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.best_so_far) <= 0))


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    trace: ConvergenceTrace
    evaluations: int
    elapsed: float  # seconds
    seed: int
    algorithm: str = ""
    branch_counts: dict = field(default_factory=dict)


@dataclass
class IterationState:
    """Snapshot handed to the per-iteration callback (test instrumentation)."""

    t: int
    positions: np.ndarray
    fitness: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    branches: np.ndarray


@dataclass
class SearchAgent:
    position: np.ndarray
    fitness: float
    velocity: Optional[np.ndarray] = None
    frequency: float = 0.0
    loudness: float = 1.0
    pulse_rate: float = 0.5


def greedy_accept(old: SearchAgent, candidate_position, candidate_fitness: float) -> SearchAgent:
    """Keep whichever of ``old`` and the candidate has lower fitness; ties go to the candidate."""
    if candidate_fitness <= old.fitness:
        return SearchAgent(np.asarray(candidate_position, dtype=float), float(candidate_fitness),
                           old.velocity, old.frequency, old.loudness, old.pulse_rate)
    return old


Callback = Callable[[IterationState], None]


def make_stream(seed) -> RandomStream:
    return seed if isinstance(seed, RandomStream) else RandomStream(int(seed))


def initial_population(objective: ObjectiveSpec, n: int, rng: RandomStream,
                       initial_positions=None) -> np.ndarray:
    """Uniform positions within bounds, or a validated caller-supplied population."""
    if initial_positions is not None:
        X = np.array(initial_positions, dtype=float, ndmin=2)
        if X.shape != (n, objective.dimension):
            raise InvalidConfigError(
                f"initial_positions has shape {X.shape}, expected ({n}, {objective.dimension})")
        if not all(objective.bounds.contains(x) for x in X):
            raise InvalidConfigError("initial_positions must lie within the objective bounds")
        return X
    lo, hi = objective.bounds.lower, objective.bounds.upper
    return lo + (hi - lo) * rng.random((n, objective.dimension))


class _Recorder:
    """Bookkeeping shared by the three optimizers: elite, trace, counters, timing."""

    def __init__(self, name: str, iterations: int, seed: int):
        self.name = name
        self.trace = np.empty(iterations)
        self.evaluations = 0
        self.seed = seed
        self.best_position = None
        self.best_fitness = np.inf
        self.branch_counts: dict[str, int] = {}
        self._start = time.perf_counter()

    def offer(self, X: np.ndarray, fit: np.ndarray) -> None:
        """Replace the elite only on strict improvement."""
        i = int(np.argmin(fit))
        if fit[i] < self.best_fitness:
            self.best_fitness = float(fit[i])
            self.best_position = X[i].copy()

    def count(self, branches: np.ndarray, names: dict[int, str]) -> None:
        for code, label in names.items():
            self.branch_counts[label] = self.branch_counts.get(label, 0) + int(np.sum(branches == code))

    def result(self) -> RunResult:
        return RunResult(
            best_position=self.best_position,
            best_fitness=self.best_fitness,
            trace=ConvergenceTrace(self.trace),
            evaluations=self.evaluations,
            elapsed=time.perf_counter() - self._start,
            seed=self.seed,
            algorithm=self.name,
            branch_counts=dict(self.branch_counts),
        )


class BaseSwarmOptimizer(BaseEstimator):
    """Estimator-style front end; ``fit`` minimizes an objective.

    Subclasses set ``_optimize`` to one of the functional optimizers. After
    ``fit``: ``result_``, ``best_position_``, ``best_fitness_`` and
    ``convergence_`` hold the outcome.
    """

    _optimize: Callable = None

    def _config(self) -> AlgorithmConfig:
        params = self.get_params()
        names = {f.name for f in fields(AlgorithmConfig)}
        return AlgorithmConfig(**{k: v for k, v in params.items() if k in names}).validate()

    def fit(self, objective: ObjectiveSpec, y=None, *, initial_positions=None,
            callback: Callback | None = None):
        seed = self.random_state
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
        result = type(self)._optimize(objective, self._config(), seed,
                                      initial_positions=initial_positions, callback=callback)
        self.result_ = result
        self.best_position_ = result.best_position
        self.best_fitness_ = result.best_fitness
        self.convergence_ = result.trace.best_so_far
        self.n_evaluations_ = result.evaluations
        return self

    def score(self, objective: ObjectiveSpec, y=None) -> float:
        """Negated best fitness, so that larger is better as scikit-learn expects."""
        from sklearn.utils.validation import check_is_fitted

        check_is_fitted(self, "best_fitness_")
        return -self.best_fitness_

    def predict(self, X=None):
        """Return the best position found (the optimizer's "prediction")."""
        from sklearn.utils.validation import check_is_fitted

        check_is_fitted(self, "best_position_")
        return self.best_position_.copy()


def validate_run(objective: ObjectiveSpec, config: AlgorithmConfig) -> AlgorithmConfig:
    if not isinstance(config, AlgorithmConfig):
        raise InvalidConfigError(f"expected AlgorithmConfig, got {type(config).__name__}")
    config.validate()
    if objective.dimension < 1:
        raise InvalidConfigError("objective dimension must be positive")
    return config


def as_vector_pair(a, b):
    a = check_vector(a, name="x")
    b = check_vector(b, dim=a.shape[0], name="reference")
    return a, b
