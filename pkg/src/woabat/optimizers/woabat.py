"""Hybrid WOA-BAT.

The WOA loop with both ``p < 0.5`` branches replaced by bat flight steps:
toward the elite when |A| < 1, and (in the default mode) toward a random
agent when |A| >= 1. The spiral branch is unchanged. Every agent keeps its
new position only if it is no worse than the old one.

Random draws per iteration, in order (each of size n): branch-test ``r``
for the scalar |A|, ``p``, spiral ``k``, random-agent index, frequency
``beta``; then evaluation noise for noisy objectives.
"""

from __future__ import annotations

import numpy as np

from ..core import clamp_to_bounds, coefficient_A, linear_a_schedule
from ._base import (
    ENCIRCLE,
    SEARCH,
    SPIRAL,
    AlgorithmConfig,
    BaseSwarmOptimizer,
    Callback,
    HybridMode,
    IterationState,
    RunResult,
    _Recorder,
    initial_population,
    make_stream,
    validate_run,
)
from .bat import bat_frequency, bat_velocity_position, decay_loudness, pulse_rate
from .woa import woa_spiral_update

WOABAT_BRANCHES = {ENCIRCLE: "bat_best", SEARCH: "bat_random", SPIRAL: "spiral"}


def woabat_optimize(objective, config: AlgorithmConfig, seed, *, initial_positions=None,
                    callback: Callback | None = None) -> RunResult:
    """Minimize ``objective`` with the WOA-BAT hybrid."""
    validate_run(objective, config)
    rng = make_stream(seed)
    n, T = config.population, config.iterations
    rec = _Recorder("woa-bat", T, rng.seed)

    X = initial_population(objective, n, rng, initial_positions)
    V = np.zeros_like(X)
    loud = np.full(n, float(config.loudness_init))
    pulse = np.full(n, float(config.pulse_rate_init))
    fit = objective.batch(X, rng)
    rec.evaluations += n
    rec.offer(X, fit)

    for t in range(T):
        a = linear_a_schedule(t, T)
        A_branch = coefficient_A(a, rng.random(n))
        p = rng.random(n)
        k = 2.0 * rng.random(n) - 1.0
        partner = rng.integers(n, n)
        f = bat_frequency(config.f_min, config.f_max, rng.random(n))

        best = np.broadcast_to(rec.best_position, X.shape)
        spiral = p >= 0.5
        search = ~spiral & (np.abs(A_branch) >= 1.0)
        branches = np.where(spiral, SPIRAL, np.where(search, SEARCH, ENCIRCLE))

        if config.hybrid_mode is HybridMode.RAND_BEST_SUBSTITUTION:
            target = np.where(search[:, None], X[partner], best)
        else:
            target = best
        V_flight, X_flight = bat_velocity_position(X, V, target, f[:, None])
        cand = np.where(spiral[:, None],
                        woa_spiral_update(X, best, config.spiral_b, k[:, None]),
                        X_flight)
        V = np.where(spiral[:, None], V, V_flight)

        cand = clamp_to_bounds(cand, objective.bounds)
        cand_fit = objective.batch(cand, rng)
        rec.evaluations += n

        accept = cand_fit <= fit
        X = np.where(accept[:, None], cand, X)
        fit = np.where(accept, cand_fit, fit)
        loud = np.where(accept, decay_loudness(loud, config.alpha), loud)
        pulse = np.where(accept, pulse_rate(config.pulse_rate_init, config.gamma, t + 1), pulse)

        rec.offer(X, fit)
        rec.trace[t] = rec.best_fitness
        rec.count(branches, WOABAT_BRANCHES)
        if callback is not None:
            callback(IterationState(t, X.copy(), fit.copy(), rec.best_position.copy(),
                                    rec.best_fitness, branches))
    return rec.result()


class WOABatOptimizer(BaseSwarmOptimizer):
    """Hybrid WOA-BAT as a scikit-learn style estimator.

    Parameters
    ----------
    population, iterations : int
    spiral_b : float
    f_min, f_max : float
        Frequency range of the bat flight steps.
    loudness_init, pulse_rate_init, alpha, gamma : float
        Bat state, updated whenever an agent accepts a move.
    hybrid_mode : {"rand_best_substitution", "literal"}
        ``literal`` pulls both flight branches toward the elite.
    random_state : int, optional
    """

    _optimize = staticmethod(woabat_optimize)

    def __init__(self, population=30, iterations=500, spiral_b=1.0, f_min=0.0, f_max=2.0,
                 loudness_init=1.0, pulse_rate_init=0.5, alpha=0.9, gamma=0.9,
                 hybrid_mode="rand_best_substitution", random_state=None):
        self.population = population
        self.iterations = iterations
        self.spiral_b = spiral_b
        self.f_min = f_min
        self.f_max = f_max
        self.loudness_init = loudness_init
        self.pulse_rate_init = pulse_rate_init
        self.alpha = alpha
        self.gamma = gamma
        self.hybrid_mode = hybrid_mode
        self.random_state = random_state
