"""Shift/rotate/bias wrapper for CEC-style objectives and its data-file loader.

Transform files are JSON objects::

    {"dim": 2, "shift": [1.0, 2.0], "rotation": [[0, 1], [1, 0]], "bias": -450}

``rotation`` is optional (identity when absent).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from ..core import Bounds, DimensionMismatchError
from . import classical, cec2019
from ._spec import Modality, ObjectiveSpec


class TransformDataError(ValueError):
    """Invalid transform data; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class MalformedTransformError(TransformDataError):
    pass


class TransformDimensionError(TransformDataError, DimensionMismatchError):
    pass


@dataclass(frozen=True)
class TransformData:
    dimension: int
    shift: np.ndarray
    rotation: Optional[np.ndarray] = None
    bias: float = 0.0

    def __post_init__(self):
        shift = np.asarray(self.shift, dtype=float)
        if shift.ndim != 1 or shift.shape[0] != self.dimension:
            raise TransformDimensionError(
                f"shift has length {shift.size}, expected dim={self.dimension}", field="shift")
        if not np.all(np.isfinite(shift)):
            raise MalformedTransformError("shift contains non-finite values", field="shift")
        object.__setattr__(self, "shift", shift)
        if self.rotation is not None:
            rot = np.asarray(self.rotation, dtype=float)
            if rot.shape != (self.dimension, self.dimension):
                raise TransformDimensionError(
                    f"rotation has shape {rot.shape}, expected "
                    f"({self.dimension}, {self.dimension})", field="rotation")
            if not np.all(np.isfinite(rot)):
                raise MalformedTransformError("rotation contains non-finite values", field="rotation")
            object.__setattr__(self, "rotation", rot)
        if not math.isfinite(self.bias):
            raise MalformedTransformError("bias must be finite", field="bias")

    @classmethod
    def identity(cls, dim: int) -> "TransformData":
        return cls(dim, np.zeros(dim))


def load_transform_data(path) -> TransformData:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"transform data file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedTransformError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise MalformedTransformError(f"{path}: top level must be an object")

    dim = raw.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MalformedTransformError(f"{path}: 'dim' must be a positive integer", field="dim")

    def _reals(value, name, depth):
        arr = None
        try:
            arr = np.asarray(value, dtype=float)
        except (TypeError, ValueError):
            pass
        if arr is None or arr.ndim != depth or value is None:
            kind = "an array of reals" if depth == 1 else "an array of row arrays"
            raise MalformedTransformError(f"{path}: '{name}' must be {kind}", field=name)
        return arr

    if "shift" not in raw:
        raise MalformedTransformError(f"{path}: missing field 'shift'", field="shift")
    shift = _reals(raw["shift"], "shift", 1)
    rotation = None
    if raw.get("rotation") is not None:
        rotation = _reals(raw["rotation"], "rotation", 2)
    bias = raw.get("bias", 0.0)
    if isinstance(bias, bool) or not isinstance(bias, (int, float)):
        raise MalformedTransformError(f"{path}: 'bias' must be a real number", field="bias")
    return TransformData(dim, shift, rotation, float(bias))


def dump_transform_data(data: TransformData, path) -> None:
    payload = {"dim": data.dimension, "shift": data.shift.tolist(), "bias": data.bias}
    if data.rotation is not None:
        payload["rotation"] = data.rotation.tolist()
    Path(path).write_text(json.dumps(payload, indent=2))


class _Transformed:
    def __init__(self, base, shift, rotation, bias):
        self.base = base
        self.shift = shift
        self.rotation = rotation
        self.bias = bias

    def __call__(self, X):
        Z = X - self.shift
        if self.rotation is not None:
            Z = Z @ self.rotation.T
        return self.base(Z) + self.bias


def shifted_wrap(base: ObjectiveSpec, t: TransformData, *, id: str | None = None,
                 name: str | None = None, bounds: Bounds | None = None) -> ObjectiveSpec:
    """Objective ``x -> base(R @ (x - shift)) + bias``."""
    if t.dimension != base.dimension:
        raise TransformDimensionError(
            f"transform dim {t.dimension} does not match {base.id} dimension {base.dimension}",
            field="dim")
    known_min = None if base.known_min is None else base.known_min + t.bias
    argmin = None
    if base.known_argmin is not None:
        inner = base.known_argmin
        if t.rotation is not None:
            try:
                inner = np.linalg.solve(t.rotation, inner)
            except np.linalg.LinAlgError:
                inner = None
        argmin = None if inner is None else t.shift + inner
    return replace(
        base,
        id=id or f"{base.id}+T",
        name=name or f"Shifted {base.name}",
        bounds=bounds or base.bounds,
        func=_Transformed(base.func, t.shift, t.rotation, t.bias),
        known_min=known_min,
        known_argmin=argmin,
        resizable=False,
        known_min_per_dim=None,
        argmin_component=None,
    )


def high_conditioned_elliptic(X):
    d = X.shape[-1]
    weights = 1e6 ** (np.arange(d) / max(d - 1, 1))
    return np.sum(weights * X**2, axis=-1)


def rosenbrock_at_origin(X):
    """Rosenbrock moved so the optimum sits at the origin (CEC2005 convention)."""
    return classical.rosenbrock(X + 1.0)


@dataclass(frozen=True)
class Cec2005Entry:
    number: int
    name: str
    bias: float
    low: float
    high: float
    category: str
    base: object = None


_CEC2005 = [
    (1, "Shifted sphere function", -450, -100, 100, "unimodal", classical.sphere),
    (2, "Shifted Schwefel's problem 1.2", -450, -100, 100, "unimodal", classical.schwefel_1_2),
    (3, "Shifted rotated high conditioned elliptic function", -450, -100, 100, "unimodal",
     high_conditioned_elliptic),
    (4, "Shifted Schwefel's problem 1.2 with noise in fitness", -450, -100, 100, "unimodal", None),
    (5, "Schwefel's problem 2.6 with global optimum on bounds", -310, -100, 100, "unimodal", None),
    (6, "Shifted Rosenbrock's function", 390, -100, 100, "multimodal", rosenbrock_at_origin),
    (7, "Shifted rotated Griewank function without bounds", -180, 0, 600, "multimodal",
     classical.griewank),
    (8, "Shifted rotated Ackley's function with global optimum on bounds", -140, -32, 32,
     "multimodal", classical.ackley),
    (9, "Shifted Rastrigin's function", -330, -5, 5, "multimodal", classical.rastrigin),
    (10, "Shifted rotated Rastrigin's function", -330, -5, 5, "multimodal", classical.rastrigin),
    (11, "Shifted rotated Weierstrass function", 90, -0.5, 0.5, "multimodal", cec2019.weierstrass),
    (12, "Schwefel's problem 2.13", -460, -math.pi, math.pi, "multimodal", None),
    (13, "Expanded extended Griewank plus Rosenbrock's function (F8F2)", -130, -3, 1,
     "expanded", None),
    (14, "Shifted rotated expanded Scaffer's F6", -300, -100, 100, "expanded",
     cec2019.expanded_schaffer_f6),
    (15, "Hybrid composition function", 120, -5, 5, "composition", None),
    (16, "Rotated hybrid composition function", 120, -5, 5, "composition", None),
    (17, "Rotated hybrid composition function with noise in fitness", 120, -5, 5,
     "composition", None),
    (18, "Rotated hybrid composition function", 10, -5, 5, "composition", None),
    (19, "Rotated hybrid composition function with a narrow basin for the global optimum",
     10, -5, 5, "composition", None),
    (20, "Rotated hybrid composition function with the global optimum on the bounds",
     10, -5, 5, "composition", None),
    (21, "Rotated hybrid composition function", 360, -5, 5, "composition", None),
    (22, "Rotated hybrid composition function with high condition number matrix",
     360, -5, 5, "composition", None),
    (23, "Noncontinuous rotated hybrid composition function", 360, -5, 5, "composition", None),
    (24, "Rotated hybrid composition function", 260, -5, 5, "composition", None),
    (25, "Rotated hybrid composition function without bounds", 260, 2, 5, "composition", None),
]

CEC2005_DIMENSIONS = (10, 30, 50)


def cec2005_catalog() -> list[Cec2005Entry]:
    return [Cec2005Entry(n, name, float(bias), float(lo), float(hi), cat, base)
            for n, name, bias, lo, hi, cat, base in _CEC2005]


def cec2005_objective(number: int, t: TransformData) -> ObjectiveSpec:
    """Build CEC2005 function ``number`` from externally supplied transform data.

    Only entries whose base is a plain function of the transformed input are
    supported; ``t.bias`` should carry the catalog bias.
    """
    entries = {e.number: e for e in cec2005_catalog()}
    if number not in entries:
        raise KeyError(f"no CEC2005 function numbered {number}")
    entry = entries[number]
    if entry.base is None:
        raise NotImplementedError(f"CEC2005 F{number} ({entry.name}) has no plain base function")
    dim = t.dimension
    base = ObjectiveSpec(
        id=f"F{number}", name=entry.name, dimension=dim,
        bounds=Bounds.uniform(entry.low, entry.high, dim), func=entry.base,
        known_min=0.0, known_argmin=np.zeros(dim),
        modality=Modality.UNIMODAL if entry.category == "unimodal" else Modality.MULTIMODAL,
        suite="cec2005",
    )
    return shifted_wrap(base, t, id=f"F{number}", name=entry.name)
