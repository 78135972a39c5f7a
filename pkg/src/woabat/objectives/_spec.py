from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from ..core import Bounds, DimensionMismatchError, OutOfBoundsError, RandomStream


class Modality(str, enum.Enum):
    UNIMODAL = "unimodal"
    MULTIMODAL = "multimodal"
    FIXED_DIMENSION_MULTIMODAL = "fixed-dimension-multimodal"


@dataclass(frozen=True)
class ObjectiveSpec:
    """A named benchmark function on a box domain.

    ``func`` maps a stack of points of shape ``(n, dim)`` to ``n`` values.
    When ``noisy`` is set, a uniform [0, 1) addend drawn from the caller's
    :class:`~woabat.core.RandomStream` is added to every value.
    ``resizable`` objectives accept any dimension via :meth:`with_dimension`;
    ``known_min_per_dim`` makes the minimum scale with it.
    """

    id: str
    name: str
    dimension: int
    bounds: Bounds
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    known_min: Optional[float] = None
    known_argmin: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    modality: Modality = Modality.MULTIMODAL
    noisy: bool = False
    resizable: bool = False
    suite: str = ""
    known_min_per_dim: Optional[float] = field(default=None, repr=False)
    argmin_component: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        if self.bounds.dim != self.dimension:
            raise DimensionMismatchError(
                f"{self.id}: bounds have dimension {self.bounds.dim}, expected {self.dimension}"
            )
        if self.known_argmin is not None:
            argmin = np.asarray(self.known_argmin, dtype=float)
            argmin.setflags(write=False)
            object.__setattr__(self, "known_argmin", argmin)

    def with_dimension(self, dim: int) -> "ObjectiveSpec":
        """Copy of this objective in ``dim`` dimensions (resizable objectives only)."""
        if dim == self.dimension:
            return self
        if not self.resizable:
            raise DimensionMismatchError(f"{self.id} has fixed dimension {self.dimension}")
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        lo, hi = float(self.bounds.lower[0]), float(self.bounds.upper[0])
        known_min = self.known_min
        if self.known_min_per_dim is not None:
            known_min = self.known_min_per_dim * dim
        argmin = None
        if self.argmin_component is not None:
            argmin = np.full(dim, self.argmin_component)
        return replace(self, dimension=dim, bounds=Bounds.uniform(lo, hi, dim),
                       known_min=known_min, known_argmin=argmin)

    def batch(self, X, rng: RandomStream | None = None) -> np.ndarray:
        """Evaluate rows of ``X`` without domain checks (optimizer fast path)."""
        X = np.asarray(X, dtype=float)
        values = self.func(X)
        if self.noisy:
            if rng is None:
                raise ValueError(f"{self.id} is noisy and needs a random stream")
            values = values + rng.random(X.shape[0])
        return values

    def __call__(self, x, rng: RandomStream | None = None) -> float:
        return evaluate(self, x, rng)


def evaluate(spec: ObjectiveSpec, x, rng: RandomStream | None = None) -> float:
    """Evaluate one point, rejecting wrong dimensions and out-of-domain input."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != spec.dimension:
        raise DimensionMismatchError(
            f"{spec.id} expects a vector of length {spec.dimension}, got shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("input contains non-finite values")
    if not spec.bounds.contains(x):
        raise OutOfBoundsError(f"point lies outside the domain of {spec.id}: {spec.bounds!r}")
    return float(spec.batch(x[None, :], rng)[0])
