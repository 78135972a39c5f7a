"""Benchmark objective catalogs."""

from ._spec import Modality, ObjectiveSpec, evaluate
from .cec2019 import cec2019_suite
from .classical import classical_suite
from .transforms import (
    MalformedTransformError,
    TransformData,
    TransformDataError,
    TransformDimensionError,
    cec2005_catalog,
    cec2005_objective,
    dump_transform_data,
    load_transform_data,
    shifted_wrap,
)

SUITES = {"classical": classical_suite, "cec2019": cec2019_suite}


def get_suite(name: str, dim: int | None = None) -> list[ObjectiveSpec]:
    """Catalog by name; ``dim`` resizes the scalable members only."""
    try:
        factory = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return factory() if dim is None else factory(dim)


def get_objective(suite: str, function_id: str, dim: int | None = None) -> ObjectiveSpec:
    for spec in get_suite(suite, dim):
        if spec.id == function_id:
            return spec
    raise KeyError(f"unknown function {function_id!r} in suite {suite!r}")


__all__ = [
    "Modality", "ObjectiveSpec", "evaluate", "classical_suite", "cec2019_suite",
    "TransformData", "TransformDataError", "MalformedTransformError",
    "TransformDimensionError", "shifted_wrap", "load_transform_data",
    "dump_transform_data", "cec2005_catalog", "cec2005_objective",
    "SUITES", "get_suite", "get_objective",
]
