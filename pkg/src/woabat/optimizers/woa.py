"""Whale optimization algorithm.

Each agent gets one scalar ``A`` and one scalar ``C`` per iteration; the
same ``A`` drives the |A| >= 1 branch test and the move itself.

Random draws per iteration, in this order (each of size ``n`` =
population): ``r_A``, ``r_C``, ``p``, spiral ``k`` (mapped to [-1, 1)),
random-agent index; then, for noisy objectives, one noise value per agent
at evaluation time. The initial population (n x dim) and its noise
precede the first iteration.
"""

from __future__ import annotations

import numpy as np

from ..core import (
    DimensionMismatchError,
    clamp_to_bounds,
    coefficient_A,
    coefficient_C,
    linear_a_schedule,
    spiral_factor,
)
from ._base import (
    ENCIRCLE,
    SEARCH,
    SPIRAL,
    AlgorithmConfig,
    BaseSwarmOptimizer,
    Callback,
    IterationState,
    RunResult,
    _Recorder,
    initial_population,
    make_stream,
    validate_run,
)

WOA_BRANCHES = {ENCIRCLE: "encircle", SEARCH: "search", SPIRAL: "spiral"}


def _checked(*vectors, coefficients=()):
    """Vectors must share one shape; coefficients need only broadcast against it."""
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    coefficients = [np.asarray(c, dtype=float) for c in coefficients]
    shapes = {v.shape for v in vectors}
    if len(shapes) > 1:
        raise DimensionMismatchError(f"vector shapes differ: {sorted(shapes)}")
    try:
        np.broadcast_shapes(vectors[0].shape, *(c.shape for c in coefficients))
    except ValueError:
        raise DimensionMismatchError(
            f"coefficient shapes {[c.shape for c in coefficients]} do not fit vectors of shape "
            f"{vectors[0].shape}") from None
    return vectors + coefficients


def woa_encircle_update(x, x_best, A, C):
    """Move toward the elite: ``x_best - A * |C * x_best - x|`` (componentwise)."""
    x, x_best, A, C = _checked(x, x_best, coefficients=(A, C))
    return x_best - A * np.abs(C * x_best - x)


def woa_spiral_update(x, x_best, b: float, k):
    """Logarithmic-helix move around the elite."""
    x, x_best = _checked(x, x_best)
    return spiral_factor(b, k) * np.abs(x_best - x) + x_best


def woa_search_update(x, x_rand, A, C):
    """Exploration move relative to a randomly chosen agent."""
    x, x_rand, A, C = _checked(x, x_rand, coefficients=(A, C))
    return x_rand - A * np.abs(C * x_rand - x)


def woa_optimize(objective, config: AlgorithmConfig, seed, *, initial_positions=None,
                 callback: Callback | None = None) -> RunResult:
    """Minimize ``objective`` with WOA.

    ``seed`` may be an integer or a ready :class:`~woabat.core.RandomStream`
    (tests pass a :class:`~woabat.core.ScriptedStream`).
    """
    validate_run(objective, config)
    rng = make_stream(seed)
    n, T = config.population, config.iterations
    rec = _Recorder("woa", T, rng.seed)

    X = initial_population(objective, n, rng, initial_positions)
    fit = objective.batch(X, rng)
    rec.evaluations += n
    rec.offer(X, fit)

    for t in range(T):
        a = linear_a_schedule(t, T)
        A = coefficient_A(a, rng.random(n))
        C = coefficient_C(rng.random(n))
        p = rng.random(n)
        k = 2.0 * rng.random(n) - 1.0
        partner = rng.integers(n, n)

        best = rec.best_position
        spiral = p >= 0.5
        search = ~spiral & (np.abs(A) >= 1.0)
        branches = np.where(spiral, SPIRAL, np.where(search, SEARCH, ENCIRCLE))

        X_new = np.where(search[:, None],
                         woa_search_update(X, X[partner], A[:, None], C[:, None]),
                         woa_encircle_update(X, np.broadcast_to(best, X.shape), A[:, None], C[:, None]))
        X_new = np.where(spiral[:, None],
                         woa_spiral_update(X, np.broadcast_to(best, X.shape), config.spiral_b,
                                           k[:, None]),
                         X_new)

        X = clamp_to_bounds(X_new, objective.bounds)
        fit = objective.batch(X, rng)
        rec.evaluations += n
        rec.offer(X, fit)
        rec.trace[t] = rec.best_fitness
        rec.count(branches, WOA_BRANCHES)
        if callback is not None:
            callback(IterationState(t, X.copy(), fit.copy(), rec.best_position.copy(),
                                    rec.best_fitness, branches))
    return rec.result()


class WhaleOptimizer(BaseSwarmOptimizer):
    """Whale optimization algorithm as a scikit-learn style estimator.

    Parameters
    ----------
    population : int
        Number of whales.
    iterations : int
        Iteration budget; the distance-control parameter decays over it.
    spiral_b : float
        Shape constant of the logarithmic spiral.
    random_state : int, optional
        Seed of the run's random stream; drawn from system entropy when None.

    Examples
    --------
    >>> from woabat.objectives import classical_suite
    >>> sphere = classical_suite(dim=5)[0]
    >>> WhaleOptimizer(population=10, iterations=200, random_state=0).fit(sphere).best_fitness_ < 1e-12
    True
    """

    _optimize = staticmethod(woa_optimize)

    def __init__(self, population=30, iterations=500, spiral_b=1.0, random_state=None):
        self.population = population
        self.iterations = iterations
        self.spiral_b = spiral_b
        self.random_state = random_state
