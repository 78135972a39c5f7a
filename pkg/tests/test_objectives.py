import json
import math
import zlib

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from woabat.core import DimensionMismatchError, OutOfBoundsError, RandomStream, ScriptedStream
from woabat.objectives import (
    MalformedTransformError,
    Modality,
    TransformData,
    TransformDimensionError,
    cec2005_catalog,
    cec2005_objective,
    cec2019_suite,
    classical_suite,
    dump_transform_data,
    evaluate,
    get_objective,
    get_suite,
    load_transform_data,
    shifted_wrap,
)

CLASSICAL = classical_suite()
CEC2019 = cec2019_suite()
ALL = CLASSICAL + CEC2019

TABLE2 = [  # id, dim, low, high
    ("F1", 30, -100, 100), ("F2", 30, -10, 10), ("F3", 30, -100, 100), ("F4", 30, -100, 100),
    ("F5", 30, -30, 30), ("F6", 30, -100, 100), ("F7", 30, -1.28, 1.28), ("F8", 30, -500, 500),
    ("F9", 30, -5.12, 5.12), ("F10", 30, -32, 32), ("F11", 30, -600, 600), ("F12", 30, -50, 50),
    ("F13", 30, -50, 50), ("F14", 2, -65, 65), ("F15", 4, -5, 5), ("F16", 2, -5, 5),
    ("F17", 2, -5, 5), ("F18", 2, -2, 2), ("F19", 3, 0, 1), ("F20", 6, 0, 1),
    ("F21", 4, 0, 10), ("F22", 4, 0, 10), ("F23", 4, 0, 10),
]

LITERATURE_MINIMA = {  # standard published minima of the fixed-dimension functions
    "F14": 0.998004, "F15": 0.0003075, "F16": -1.0316285, "F17": 0.397887, "F18": 3.0,
    "F19": -3.86278, "F20": -3.32237, "F21": -10.15320, "F22": -10.40294, "F23": -10.53641,
}


def test_classical_suite_shape_matches_table():
    assert [s.id for s in CLASSICAL] == [f"F{i}" for i in range(1, 24)]
    for spec, (fid, dim, lo, hi) in zip(CLASSICAL, TABLE2):
        assert spec.id == fid
        assert spec.dimension == dim
        np.testing.assert_array_equal(spec.bounds.lower, lo)
        np.testing.assert_array_equal(spec.bounds.upper, hi)


def test_classical_modalities():
    assert all(s.modality is Modality.UNIMODAL for s in CLASSICAL[:7])
    assert all(s.modality is Modality.MULTIMODAL for s in CLASSICAL[7:13])
    assert all(s.modality is Modality.FIXED_DIMENSION_MULTIMODAL for s in CLASSICAL[13:])


def test_catalog_examples():
    f9 = CLASSICAL[8]
    assert f9.known_min == 0.0 and f9.bounds.upper[0] == 5.12
    assert round(CLASSICAL[16].known_min, 3) == 0.398
    assert CLASSICAL[7].known_min == pytest.approx(-418.9829 * 30, abs=1e-2)


@pytest.mark.parametrize("fid,value", sorted(LITERATURE_MINIMA.items()))
def test_fixed_dimension_minima_match_literature(fid, value):
    spec = get_objective("classical", fid)
    assert spec.known_min == pytest.approx(value, abs=2e-5)


@pytest.mark.parametrize("spec", ALL, ids=lambda s: f"{s.suite}-{s.id}")
def test_known_argmin_reaches_known_min(spec):
    rng = ScriptedStream([0.0]) if spec.noisy else None
    assert evaluate(spec, spec.known_argmin, rng) <= spec.known_min + 1e-6


@pytest.mark.parametrize("spec", [s for s in ALL if not s.noisy], ids=lambda s: f"{s.suite}-{s.id}")
def test_random_samples_never_beat_known_min(spec):
    rng = np.random.default_rng(zlib.crc32(f"{spec.suite}{spec.id}".encode()))
    lo, hi = spec.bounds.lower, spec.bounds.upper
    X = lo + (hi - lo) * rng.random((10_000, spec.dimension))
    values = spec.batch(X)
    assert np.all(np.isfinite(values))
    assert values.min() >= spec.known_min - 1e-9


@pytest.mark.parametrize("fid,x,expected,tol", [
    ("F1", np.zeros(30), 0.0, 0.0),
    ("F5", np.ones(30), 0.0, 0.0),
    ("F17", [math.pi, 2.275], 0.397887, 1e-5),
    ("F16", [0.0898, -0.7126], -1.0316, 1e-3),
])
def test_evaluate_examples(fid, x, expected, tol):
    assert evaluate(get_objective("classical", fid), x) == pytest.approx(expected, abs=tol)


def test_evaluate_rejects_bad_input():
    f1 = CLASSICAL[0]
    with pytest.raises(DimensionMismatchError):
        evaluate(f1, np.zeros(29))
    with pytest.raises(OutOfBoundsError):
        evaluate(f1, np.full(30, 101.0))
    with pytest.raises(ValueError):
        evaluate(f1, np.full(30, np.nan))


def test_noisy_quartic_uses_caller_stream():
    f7 = CLASSICAL[6]
    x = np.full(30, 0.5)
    assert f7(x, RandomStream(1)) == f7(x, RandomStream(1))
    assert f7(x, ScriptedStream([0.25])) == pytest.approx(f7.func(x[None])[0] + 0.25)
    with pytest.raises(ValueError):
        f7(x)


@pytest.mark.parametrize("fid", ["F6", "F9", "F12"])
def test_formulas_at_hand_points(fid):
    # independent scalar re-statements of the textbook formulas
    x = np.array([0.3, -1.2, 2.0])
    spec = get_objective("classical", fid, dim=3)
    if fid == "F6":
        expected = sum((xi + 0.5) ** 2 for xi in x)
    elif fid == "F9":
        expected = sum(xi * xi - 10 * math.cos(2 * math.pi * xi) + 10 for xi in x)
    else:
        y = 1 + (x + 1) / 4
        expected = math.pi / 3 * (10 * math.sin(math.pi * y[0]) ** 2
                                  + sum((y[i] - 1) ** 2 * (1 + 10 * math.sin(math.pi * y[i + 1]) ** 2)
                                        for i in range(2))
                                  + (y[-1] - 1) ** 2)
    assert evaluate(spec, x) == pytest.approx(expected, rel=1e-12)


def test_with_dimension_resizes_scalable_only():
    f8 = CLASSICAL[7].with_dimension(5)
    assert f8.dimension == 5 and f8.known_min == pytest.approx(-418.9828872724338 * 5)
    assert evaluate(f8, f8.known_argmin) == pytest.approx(f8.known_min, abs=1e-6)
    with pytest.raises(DimensionMismatchError):
        CLASSICAL[13].with_dimension(5)


def test_get_suite_and_objective_errors():
    assert len(get_suite("classical")) == 23 and len(get_suite("cec2019")) == 10
    with pytest.raises(KeyError):
        get_suite("bogus")
    with pytest.raises(KeyError):
        get_objective("classical", "F24")


# -- CEC2019 ------------------------------------------------------------------

def test_cec2019_catalog():
    dims = [s.dimension for s in CEC2019]
    assert dims == [9, 16, 18] + [10] * 7
    assert CEC2019[0].bounds.upper[0] == 8192 and CEC2019[1].bounds.upper[0] == 16384
    assert CEC2019[2].bounds.upper[0] == 4
    assert all(s.known_min == 1.0 for s in CEC2019)
    assert all(s.bounds.upper[0] == 100 for s in CEC2019[3:])


@pytest.mark.parametrize("fid,tol", [("F4", 0.0), ("F5", 0.0), ("F10", 1e-12)])
def test_cec2019_base_value_at_origin(fid, tol):
    assert evaluate(get_objective("cec2019", fid), np.zeros(10)) == pytest.approx(1.0, abs=tol)


# -- transforms ------------------------------------------------------------------

def test_shifted_wrap_identity_matches_base():
    base = CLASSICAL[9]
    wrapped = shifted_wrap(base, TransformData.identity(30))
    X = np.random.default_rng(0).uniform(-32, 32, (100, 30))
    np.testing.assert_allclose(wrapped.batch(X), base.batch(X), rtol=0, atol=1e-12)


def test_shifted_wrap_shift_and_bias():
    base = CLASSICAL[0]
    s = np.random.default_rng(1).uniform(-50, 50, 30)
    wrapped = shifted_wrap(base, TransformData(30, s, bias=-450.0))
    assert evaluate(wrapped, s) == base.func(np.zeros((1, 30)))[0] - 450.0
    assert wrapped.known_min == -450.0
    np.testing.assert_allclose(wrapped.known_argmin, s)


def test_shifted_wrap_permutation_leaves_sphere_unchanged():
    base = CLASSICAL[0].with_dimension(2)
    perm = shifted_wrap(base, TransformData(2, [0.0, 0.0], rotation=[[0, 1], [1, 0]]))
    X = np.random.default_rng(2).uniform(-100, 100, (100, 2))
    np.testing.assert_array_equal(perm.batch(X), base.batch(X))


@settings(max_examples=50)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_shifted_wrap_rotation_moves_argmin_consistently(dim, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    base = get_objective("classical", "F5", dim=dim)
    shift = rng.uniform(-5, 5, dim)
    wrapped = shifted_wrap(base, TransformData(dim, shift, rotation=q, bias=3.0))
    assert wrapped.batch(wrapped.known_argmin[None])[0] == pytest.approx(3.0, abs=1e-9)


def test_shifted_wrap_rejects_dimension_mismatch():
    with pytest.raises(TransformDimensionError):
        shifted_wrap(CLASSICAL[0], TransformData.identity(2))


def test_transform_data_validation():
    with pytest.raises(TransformDimensionError) as exc:
        TransformData(2, [1.0, 2.0, 3.0])
    assert exc.value.field == "shift"
    with pytest.raises(TransformDimensionError) as exc:
        TransformData(2, [1.0, 2.0], rotation=[[1.0]])
    assert exc.value.field == "rotation"
    with pytest.raises(MalformedTransformError):
        TransformData(1, [1.0], bias=float("nan"))


def test_load_transform_data_examples(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"dim": 2, "shift": [1, 2], "bias": 0}))
    t = load_transform_data(p)
    assert t.rotation is None and list(t.shift) == [1.0, 2.0]

    p.write_text(json.dumps({"dim": 2, "shift": [0, 0], "rotation": [[0, 1], [1, 0]], "bias": -450}))
    t = load_transform_data(p)
    assert t.rotation is not None and t.bias == -450.0

    p.write_text(json.dumps({"dim": 3, "shift": [0, 0], "bias": 0}))
    with pytest.raises(TransformDimensionError):
        load_transform_data(p)


def test_load_transform_data_distinct_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_transform_data(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MalformedTransformError):
        load_transform_data(p)
    p.write_text(json.dumps({"dim": 2, "shift": ["a", 0], "bias": 0}))
    with pytest.raises(MalformedTransformError) as exc:
        load_transform_data(p)
    assert exc.value.field == "shift"


def test_transform_round_trip(tmp_path):
    t = TransformData(2, [0.5, -1.0], rotation=[[0.0, 1.0], [1.0, 0.0]], bias=-450.0)
    dump_transform_data(t, tmp_path / "t.json")
    back = load_transform_data(tmp_path / "t.json")
    np.testing.assert_array_equal(back.shift, t.shift)
    np.testing.assert_array_equal(back.rotation, t.rotation)
    assert back.bias == t.bias


def test_cec2005_catalog_metadata():
    cat = cec2005_catalog()
    assert [e.number for e in cat] == list(range(1, 26))
    assert cat[0].bias == -450 and cat[5].bias == 390 and cat[24].bias == 260
    categories = [e.category for e in cat]
    assert categories.count("unimodal") == 5 and categories.count("multimodal") == 7
    assert categories.count("expanded") == 2 and categories.count("composition") == 11


def test_cec2005_objective_from_external_data():
    s = np.linspace(-10, 10, 10)
    f1 = cec2005_objective(1, TransformData(10, s, bias=-450.0))
    assert evaluate(f1, s) == -450.0
    with pytest.raises(NotImplementedError):
        cec2005_objective(15, TransformData.identity(10))
