"""The 23 classical benchmark functions (F1-F7 unimodal, F8-F23 multimodal).

Every function takes a stack of points ``X`` of shape ``(n, dim)`` and
returns ``n`` values.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import Bounds
from ._spec import Modality, ObjectiveSpec

# per-dimension minimum of the Schwefel 2.26 term, attained at x = 420.9687...
SCHWEFEL_MIN_PER_DIM = -418.9828872724338
SCHWEFEL_ARGMIN = 420.9687462275036


def sphere(X):
    return np.sum(X**2, axis=-1)


def schwefel_2_22(X):
    a = np.abs(X)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def schwefel_1_2(X):
    return np.sum(np.cumsum(X, axis=-1) ** 2, axis=-1)


def schwefel_2_21(X):
    return np.max(np.abs(X), axis=-1)


def rosenbrock(X):
    head, tail = X[..., :-1], X[..., 1:]
    return np.sum(100.0 * (tail - head**2) ** 2 + (head - 1.0) ** 2, axis=-1)


def step(X):
    """Shifted sphere sum((x + 0.5)^2), the form used by the reference WOA code."""
    return np.sum((X + 0.5) ** 2, axis=-1)


def quartic(X):
    """Deterministic part of the noisy quartic; the noise is added by the spec."""
    i = np.arange(1, X.shape[-1] + 1)
    return np.sum(i * X**4, axis=-1)


def schwefel_2_26(X):
    return np.sum(-X * np.sin(np.sqrt(np.abs(X))), axis=-1)


def rastrigin(X):
    return np.sum(X**2 - 10.0 * np.cos(2.0 * math.pi * X) + 10.0, axis=-1)


def ackley(X):
    n = X.shape[-1]
    term1 = -20.0 * np.exp(-0.2 * np.sqrt(np.sum(X**2, axis=-1) / n))
    term2 = -np.exp(np.sum(np.cos(2.0 * math.pi * X), axis=-1) / n)
    return term1 + term2 + 20.0 + math.e


def griewank(X):
    i = np.arange(1, X.shape[-1] + 1)
    return np.sum(X**2, axis=-1) / 4000.0 - np.prod(np.cos(X / np.sqrt(i)), axis=-1) + 1.0


def _penalty(X, a, k, m):
    return np.sum(k * ((X - a) ** m * (X > a) + (-X - a) ** m * (X < -a)), axis=-1)


def penalized_1(X):
    n = X.shape[-1]
    y = 1.0 + (X + 1.0) / 4.0
    inner = (
        10.0 * np.sin(math.pi * y[..., 0]) ** 2
        + np.sum((y[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(math.pi * y[..., 1:]) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return math.pi / n * inner + _penalty(X, 10.0, 100.0, 4)


def penalized_2(X):
    inner = (
        np.sin(3.0 * math.pi * X[..., 0]) ** 2
        + np.sum((X[..., :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * math.pi * X[..., 1:]) ** 2), axis=-1)
        + (X[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * math.pi * X[..., -1]) ** 2)
    )
    return 0.1 * inner + _penalty(X, 5.0, 100.0, 4)


_FOXHOLE_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
FOXHOLES = np.vstack([np.tile(_FOXHOLE_GRID, 5), np.repeat(_FOXHOLE_GRID, 5)])


def shekel_foxholes(X):
    diff6 = (X[..., :, None] - FOXHOLES) ** 6  # (n, 2, 25)
    j = np.arange(1, 26)
    return 1.0 / (1.0 / 500.0 + np.sum(1.0 / (j + np.sum(diff6, axis=-2)), axis=-1))


KOWALIK_A = np.array([0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627,
                      0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def kowalik(X):
    x1, x2, x3, x4 = (X[..., i, None] for i in range(4))
    b = KOWALIK_B
    model = x1 * (b**2 + b * x2) / (b**2 + b * x3 + x4)
    return np.sum((KOWALIK_A - model) ** 2, axis=-1)


def six_hump_camel(X):
    x1, x2 = X[..., 0], X[..., 1]
    return 4 * x1**2 - 2.1 * x1**4 + x1**6 / 3 + x1 * x2 - 4 * x2**2 + 4 * x2**4


def branin(X):
    x1, x2 = X[..., 0], X[..., 1]
    return (
        (x2 - 5.1 / (4 * math.pi**2) * x1**2 + 5 / math.pi * x1 - 6) ** 2
        + 10 * (1 - 1 / (8 * math.pi)) * np.cos(x1)
        + 10
    )


def goldstein_price(X):
    x1, x2 = X[..., 0], X[..., 1]
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1**2 - 14 * x2 + 6 * x1 * x2 + 3 * x2**2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1**2 + 48 * x2 - 36 * x1 * x2 + 27 * x2**2)
    return a * b


HARTMANN_C = np.array([1.0, 1.2, 3.0, 3.2])
HARTMANN3_A = np.array([[3, 10, 30], [0.1, 10, 35], [3, 10, 30], [0.1, 10, 35]], dtype=float)
HARTMANN3_P = np.array([[0.3689, 0.117, 0.2673], [0.4699, 0.4387, 0.747],
                        [0.1091, 0.8732, 0.5547], [0.03815, 0.5743, 0.8828]])
HARTMANN6_A = np.array([[10, 3, 17, 3.5, 1.7, 8], [0.05, 10, 17, 0.1, 8, 14],
                        [3, 3.5, 1.7, 10, 17, 8], [17, 8, 0.05, 10, 0.1, 14]], dtype=float)
HARTMANN6_P = np.array([[0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
                        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
                        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
                        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381]])


def _hartmann(X, A, P):
    inner = np.sum(A * (X[..., None, :] - P) ** 2, axis=-1)  # (n, 4)
    return -np.sum(HARTMANN_C * np.exp(-inner), axis=-1)


def hartmann_3(X):
    return _hartmann(X, HARTMANN3_A, HARTMANN3_P)


def hartmann_6(X):
    return _hartmann(X, HARTMANN6_A, HARTMANN6_P)


SHEKEL_A = np.array([[4, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6], [3, 7, 3, 7],
                     [2, 9, 2, 9], [5, 5, 3, 3], [8, 1, 8, 1], [6, 2, 6, 2], [7, 3.6, 7, 3.6]])
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


def _shekel(X, m):
    sq = np.sum((X[..., None, :] - SHEKEL_A[:m]) ** 2, axis=-1)
    return -np.sum(1.0 / (sq + SHEKEL_C[:m]), axis=-1)


def shekel_5(X):
    return _shekel(X, 5)


def shekel_7(X):
    return _shekel(X, 7)


def shekel_10(X):
    return _shekel(X, 10)


# Minimizers of the fixed-dimension functions, refined numerically to
# double precision; the minima are the function values at these points.
_ARGMIN = {
    "F14": [-31.978331154031938, -31.978335507645937],
    "F15": [0.19283345326730583, 0.1908362322987861, 0.12311729401958293, 0.13576598728804543],
    "F16": [0.08984200650154123, -0.7126563984461648],
    "F17": [math.pi, 2.275],
    "F18": [0.0, -1.0],
    "F19": [0.11461433993711914, 0.5556488489021321, 0.8525469535447858],
    "F20": [0.20168950725681134, 0.1500106940220466, 0.4768739765089479,
            0.27533243150846787, 0.31165161711597983, 0.6573005332006765],
    "F21": [4.00003715244135, 4.000133277144935, 4.000037153674207, 4.00013327706895],
    "F22": [4.000572917542311, 4.000689366203256, 3.9994897073652345, 3.999606158034636],
    "F23": [4.000746532171544, 4.000592933494663, 3.9996633979111373, 3.9995097987395605],
}

_FIXED = [
    # id, name, func, dim, low, high
    ("F14", "Shekel foxholes", shekel_foxholes, 2, -65.0, 65.0),
    ("F15", "Kowalik", kowalik, 4, -5.0, 5.0),
    ("F16", "Six-hump camel back", six_hump_camel, 2, -5.0, 5.0),
    ("F17", "Branin", branin, 2, -5.0, 5.0),
    ("F18", "Goldstein-Price", goldstein_price, 2, -2.0, 2.0),
    ("F19", "Hartmann 3", hartmann_3, 3, 0.0, 1.0),
    ("F20", "Hartmann 6", hartmann_6, 6, 0.0, 1.0),
    ("F21", "Shekel 5", shekel_5, 4, 0.0, 10.0),
    ("F22", "Shekel 7", shekel_7, 4, 0.0, 10.0),
    ("F23", "Shekel 10", shekel_10, 4, 0.0, 10.0),
]

_SCALABLE = [
    # id, name, func, low, high, modality, argmin component
    ("F1", "Sphere", sphere, -100.0, 100.0, Modality.UNIMODAL, 0.0),
    ("F2", "Schwefel 2.22", schwefel_2_22, -10.0, 10.0, Modality.UNIMODAL, 0.0),
    ("F3", "Schwefel 1.2", schwefel_1_2, -100.0, 100.0, Modality.UNIMODAL, 0.0),
    ("F4", "Schwefel 2.21", schwefel_2_21, -100.0, 100.0, Modality.UNIMODAL, 0.0),
    ("F5", "Rosenbrock", rosenbrock, -30.0, 30.0, Modality.UNIMODAL, 1.0),
    ("F6", "Step", step, -100.0, 100.0, Modality.UNIMODAL, -0.5),
    ("F7", "Noisy quartic", quartic, -1.28, 1.28, Modality.UNIMODAL, 0.0),
    ("F8", "Schwefel 2.26", schwefel_2_26, -500.0, 500.0, Modality.MULTIMODAL, SCHWEFEL_ARGMIN),
    ("F9", "Rastrigin", rastrigin, -5.12, 5.12, Modality.MULTIMODAL, 0.0),
    ("F10", "Ackley", ackley, -32.0, 32.0, Modality.MULTIMODAL, 0.0),
    ("F11", "Griewank", griewank, -600.0, 600.0, Modality.MULTIMODAL, 0.0),
    ("F12", "Penalized 1", penalized_1, -50.0, 50.0, Modality.MULTIMODAL, -1.0),
    ("F13", "Penalized 2", penalized_2, -50.0, 50.0, Modality.MULTIMODAL, 1.0),
]


def classical_suite(dim: int = 30) -> list[ObjectiveSpec]:
    """The 23 classical functions; ``dim`` applies to F1-F13 only."""
    suite = []
    for fid, name, func, lo, hi, modality, argmin in _SCALABLE:
        per_dim = SCHWEFEL_MIN_PER_DIM if fid == "F8" else None
        suite.append(ObjectiveSpec(
            id=fid, name=name, dimension=dim, bounds=Bounds.uniform(lo, hi, dim), func=func,
            known_min=per_dim * dim if per_dim is not None else 0.0,
            known_argmin=np.full(dim, argmin), modality=modality,
            noisy=fid == "F7", resizable=True, suite="classical",
            known_min_per_dim=per_dim, argmin_component=argmin,
        ))
    for fid, name, func, d, lo, hi in _FIXED:
        argmin = np.array(_ARGMIN[fid])
        suite.append(ObjectiveSpec(
            id=fid, name=name, dimension=d, bounds=Bounds.uniform(lo, hi, d), func=func,
            known_min=float(func(argmin[None, :])[0]), known_argmin=argmin,
            modality=Modality.FIXED_DIMENSION_MULTIMODAL, suite="classical",
        ))
    return suite
