"""Bat algorithm.

Random draws per iteration, in order: frequency ``beta`` (n), local-walk
gate (n), walk steps (n x dim, mapped to [-1, 1)), evaluation noise for
noisy objectives (n), acceptance draw (n).
"""

from __future__ import annotations

import math

import numpy as np

from ..core import RandomStream, check_vector, clamp_to_bounds
from ._base import (
    BAT_FLIGHT,
    BAT_LOCAL,
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
from .woa import _checked

BAT_BRANCHES = {BAT_FLIGHT: "flight", BAT_LOCAL: "local_walk"}


def bat_frequency(f_min: float, f_max: float, beta):
    return f_min + (f_max - f_min) * beta


def bat_velocity_position(x, v, x_best, f):
    """One flight step: returns the new velocity and the new position."""
    x, v, x_best, f = _checked(x, v, x_best, coefficients=(f,))
    v_new = v + (x - x_best) * f
    return v_new, x + v_new


def bat_local_walk(x_best, mean_loudness: float, rng: RandomStream):
    """Random step around the elite, each component within ``mean_loudness``."""
    if mean_loudness < 0:
        raise ValueError(f"mean loudness must be nonnegative, got {mean_loudness}")
    x_best = check_vector(x_best, name="x_best")
    eps = 2.0 * rng.random(x_best.shape) - 1.0
    return x_best + eps * mean_loudness


def decay_loudness(loudness, alpha: float):
    return alpha * loudness


def pulse_rate(r0: float, gamma: float, t) -> float:
    """Pulse emission rate after ``t`` iterations, rising toward ``r0``."""
    return r0 * (1.0 - np.exp(-gamma * t))


def bat_optimize(objective, config: AlgorithmConfig, seed, *, initial_positions=None,
                 callback: Callback | None = None) -> RunResult:
    """Minimize ``objective`` with the bat algorithm."""
    validate_run(objective, config)
    rng = make_stream(seed)
    n, dim, T = config.population, objective.dimension, config.iterations
    rec = _Recorder("bat", T, rng.seed)

    X = initial_population(objective, n, rng, initial_positions)
    V = np.zeros_like(X)
    loud = np.full(n, float(config.loudness_init))
    pulse = np.full(n, float(config.pulse_rate_init))
    fit = objective.batch(X, rng)
    rec.evaluations += n
    rec.offer(X, fit)

    for t in range(1, T + 1):
        best = rec.best_position
        f = bat_frequency(config.f_min, config.f_max, rng.random(n))
        V, cand = bat_velocity_position(X, V, np.broadcast_to(best, X.shape), f[:, None])
        local = rng.random(n) > pulse
        eps = 2.0 * rng.random((n, dim)) - 1.0
        walk = best + eps * loud.mean()
        cand = np.where(local[:, None], walk, cand)
        cand = clamp_to_bounds(cand, objective.bounds)

        cand_fit = objective.batch(cand, rng)
        rec.evaluations += n
        accept = (rng.random(n) < loud) & (cand_fit < fit)
        X = np.where(accept[:, None], cand, X)
        fit = np.where(accept, cand_fit, fit)
        loud = np.where(accept, decay_loudness(loud, config.alpha), loud)
        pulse = np.where(accept, pulse_rate(config.pulse_rate_init, config.gamma, t), pulse)

        rec.offer(cand, cand_fit)
        rec.trace[t - 1] = rec.best_fitness
        branches = np.where(local, BAT_LOCAL, BAT_FLIGHT)
        rec.count(branches, BAT_BRANCHES)
        if callback is not None:
            callback(IterationState(t - 1, X.copy(), fit.copy(), rec.best_position.copy(),
                                    rec.best_fitness, branches))
    return rec.result()


class BatOptimizer(BaseSwarmOptimizer):
    """Bat algorithm as a scikit-learn style estimator.

    Parameters
    ----------
    population, iterations : int
        Swarm size and iteration budget.
    f_min, f_max : float
        Frequency range.
    loudness_init, pulse_rate_init : float
        Initial loudness and pulse emission rate of every bat.
    alpha : float
        Loudness decay factor applied on each accepted move.
    gamma : float
        Pulse-rate growth constant.
    random_state : int, optional
    """

    _optimize = staticmethod(bat_optimize)

    def __init__(self, population=30, iterations=500, f_min=0.0, f_max=2.0, loudness_init=1.0,
                 pulse_rate_init=0.5, alpha=0.9, gamma=0.9, random_state=None):
        self.population = population
        self.iterations = iterations
        self.f_min = f_min
        self.f_max = f_max
        self.loudness_init = loudness_init
        self.pulse_rate_init = pulse_rate_init
        self.alpha = alpha
        self.gamma = gamma
        self.random_state = random_state
