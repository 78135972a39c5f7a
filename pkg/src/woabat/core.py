"""Shared numeric primitives: bounds, random streams, WOA coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class InvalidConfigError(ValueError):
    """An optimizer, schedule or experiment was configured with invalid values."""


class DimensionMismatchError(ValueError):
    """Two vectors (or a vector and a problem) disagree on dimension."""


class OutOfBoundsError(ValueError):
    """A point lies outside the search domain of an objective."""


def check_vector(x, dim: int | None = None, name: str = "x") -> np.ndarray:
    """Validate a real vector and return it as a 1-D float array.

    Parameters
    ----------
    x : array-like
        Candidate vector.
    dim : int, optional
        Required length.
    name : str
        Name used in error messages.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(f"{name} has length {arr.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_same_length(*arrays: np.ndarray) -> None:
    lengths = {np.shape(a)[-1] for a in arrays}
    if len(lengths) > 1:
        raise DimensionMismatchError(f"vector lengths differ: {sorted(lengths)}")


@dataclass(frozen=True)
class Bounds:
    """Box constraints ``lower[i] <= x[i] <= upper[i]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = check_vector(self.lower, name="lower")
        upper = check_vector(self.upper, dim=lower.shape[0], name="upper")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, low: float, high: float, dim: int) -> "Bounds":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def contains(self, x, atol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol))

    def __eq__(self, other):
        if not isinstance(other, Bounds):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.lower.tobytes(), self.upper.tobytes()))

    def __repr__(self):
        if np.all(self.lower == self.lower[0]) and np.all(self.upper == self.upper[0]):
            return f"Bounds([{self.lower[0]:g}, {self.upper[0]:g}]^{self.dim})"
        return f"Bounds(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


def clamp_to_bounds(x, bounds: Bounds) -> np.ndarray:
    """Clip ``x`` (a vector or a stack of row vectors) into ``bounds``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != bounds.dim:
        raise DimensionMismatchError(
            f"vector length {x.shape[-1]} does not match bounds dimension {bounds.dim}"
        )
    return np.clip(x, bounds.lower, bounds.upper)


class RandomStream:
    """Seeded source of uniform draws owned by a single optimizer run.

    Every random quantity the optimizers use is derived from ``random``,
    so a scripted replacement (:class:`ScriptedStream`) can drive them
    deterministically.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self, size=None):
        """Uniform draws in [0, 1)."""
        return self._gen.random(size)

    def uniform(self, lo: float = 0.0, hi: float = 1.0, size=None):
        return lo + (hi - lo) * self.random(size)

    def integers(self, n: int, size=None):
        """Uniform integers in ``[0, n)``, built from uniform draws."""
        u = self.random(size)
        return np.minimum(np.floor(np.asarray(u) * n).astype(np.int64), n - 1)


class ScriptedStream(RandomStream):
    """Replays a fixed sequence of values in [0, 1) in place of random draws.

    Raises ``RuntimeError`` once the script is exhausted.
    """

    def __init__(self, values: Iterable[float]):
        self.seed = 0
        self._values = np.asarray(list(values), dtype=float)
        if np.any((self._values < 0) | (self._values >= 1)):
            raise ValueError("scripted values must lie in [0, 1)")
        self._pos = 0

    @property
    def remaining(self) -> int:
        return self._values.shape[0] - self._pos

    def random(self, size=None):
        n = 1 if size is None else int(np.prod(size))
        if n > self.remaining:
            raise RuntimeError(
                f"scripted stream exhausted: need {n} values, {self.remaining} left"
            )
        out = self._values[self._pos:self._pos + n]
        self._pos += n
        if size is None:
            return float(out[0])
        return out.reshape(size).copy()


def linear_a_schedule(t: int, T: int) -> float:
    """Distance-control parameter, decreasing linearly from 2 at t=0 to 0 at t=T."""
    if T <= 0:
        raise InvalidConfigError(f"iteration budget must be positive, got {T}")
    if not 0 <= t <= T:
        raise ValueError(f"t must lie in [0, {T}], got {t}")
    return 2.0 * (1.0 - t / T)


def coefficient_A(a, r):
    """Encircling coefficient ``2*a*r - a``, confined to [-a, a] for r in [0, 1]."""
    return 2.0 * a * r - a


def coefficient_C(r):
    return 2.0 * r


def spiral_factor(b: float, k):
    """Helix multiplier ``exp(b*k) * cos(2*pi*k)`` of the spiral move."""
    return np.exp(b * k) * np.cos(2.0 * math.pi * k)


def as_matrix(rows: Sequence[Sequence[float]], name: str = "matrix") -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr
