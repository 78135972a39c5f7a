"""The ten basic CEC2019 functions, unshifted and unrotated, each offset by +1.

F4-F10 apply the usual competition input scaling before the base function
(e.g. Rastrigin sees ``x * 5.12 / 100``) so the [-100, 100] box maps onto
each function's natural domain. Official shifted/rotated variants are
built with :func:`~woabat.objectives.transforms.shifted_wrap`.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import Bounds
from . import classical
from ._spec import Modality, ObjectiveSpec

BIAS = 1.0

CHEBYSHEV_TARGET = 72.661
CHEBYSHEV_T8 = np.array([128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0])


def chebyshev(X):
    """Storn's Chebyshev polynomial fitting; x[0] is the leading coefficient."""
    d = X.shape[-1]
    powers = np.arange(d - 1, -1, -1)
    u = np.sum(X * 1.2**powers, axis=-1)
    v = np.sum(X * (-1.2) ** powers, axis=-1)
    p1 = np.where(u < CHEBYSHEV_TARGET, (u - CHEBYSHEV_TARGET) ** 2, 0.0)
    p2 = np.where(v < CHEBYSHEV_TARGET, (v - CHEBYSHEV_TARGET) ** 2, 0.0)
    m = 32 * d
    t = 2.0 * np.arange(m + 1) / m - 1.0
    w = X @ (t[None, :] ** powers[:, None])  # (n, m + 1)
    p3 = np.sum(np.where(w > 1, (w - 1) ** 2, 0.0) + np.where(w < -1, (w + 1) ** 2, 0.0), axis=-1)
    return p1 + p2 + p3


def inverse_hilbert(X):
    d = X.shape[-1]
    n = math.isqrt(d)
    idx = np.arange(n)
    hilbert = 1.0 / (idx[:, None] + idx[None, :] + 1.0)
    Z = X.reshape(X.shape[:-1] + (n, n))
    W = hilbert @ Z
    return np.sum(np.abs(W - np.eye(n)), axis=(-2, -1))


LJ_MIN_ENERGY = 12.7120622568


def lennard_jones(X):
    """Energy of a cluster of ``dim / 3`` atoms, shifted so the optimum is 0."""
    pts = X.reshape(X.shape[:-1] + (-1, 3))
    k = pts.shape[-2]
    i, j = np.triu_indices(k, 1)
    r2 = np.sum((pts[..., i, :] - pts[..., j, :]) ** 2, axis=-1)
    r6 = r2**3
    safe = np.where(r6 > 1e-10, r6, 1.0)
    pair = np.where(r6 > 1e-10, (1.0 / safe - 2.0) / safe, 1e20)
    return np.sum(pair, axis=-1) + LJ_MIN_ENERGY


def lennard_jones_octahedron() -> np.ndarray:
    """Optimal 6-atom cluster: an octahedron minimizing 12 edge and 3 diagonal pairs."""
    # E(a) = P a^-12 - Q a^-6 with P = 12 + 3/64, Q = 24 + 3/4
    p, q = 12.0 + 3.0 / 64.0, 24.75
    edge = (2.0 * p / q) ** (1.0 / 6.0)
    s = edge / math.sqrt(2.0)
    return np.array([[s, 0, 0], [-s, 0, 0], [0, s, 0], [0, -s, 0], [0, 0, s], [0, 0, -s]]).ravel()


def weierstrass(X, a=0.5, b=3.0, k_max=20):
    k = np.arange(k_max + 1)
    ak, bk = a**k, b**k
    terms = np.sum(ak * np.cos(2.0 * math.pi * bk * (X[..., None] + 0.5)), axis=-1)
    return np.sum(terms, axis=-1) - X.shape[-1] * np.sum(ak * np.cos(math.pi * bk))


SCHWEFEL_OFFSET = 420.9687462275036
SCHWEFEL_CONST = 418.9828872724338


def modified_schwefel(X):
    n = X.shape[-1]
    z = X + SCHWEFEL_OFFSET
    inside = np.abs(z) <= 500.0
    above = z > 500.0
    below = z < -500.0
    g = np.where(inside, z * np.sin(np.sqrt(np.abs(z))), 0.0)
    m_hi = 500.0 - np.fmod(z, 500.0)
    g = g + np.where(above, m_hi * np.sin(np.sqrt(np.abs(m_hi))) - ((z - 500.0) / 100.0) ** 2 / n, 0.0)
    m_lo = np.fmod(np.abs(z), 500.0) - 500.0
    g = g + np.where(below, m_lo * np.sin(np.sqrt(np.abs(m_lo))) - ((z + 500.0) / 100.0) ** 2 / n, 0.0)
    return SCHWEFEL_CONST * n - np.sum(g, axis=-1)


def expanded_schaffer_f6(X):
    y = np.roll(X, -1, axis=-1)
    s = X**2 + y**2
    return np.sum(0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2, axis=-1)


def happy_cat(X):
    n = X.shape[-1]
    z = X - 1.0
    r2 = np.sum(z**2, axis=-1)
    return np.abs(r2 - n) ** 0.25 + (0.5 * r2 + np.sum(z, axis=-1)) / n + 0.5


class _Scaled:
    """``x -> base(scale * x) + BIAS``; a class so the objective stays picklable."""

    def __init__(self, base, scale):
        self.base = base
        self.scale = scale

    def __call__(self, X):
        return self.base(X * self.scale) + BIAS


_FIXED = [
    # id, name, func, dim, half-range
    ("F1", "Storn's Chebyshev polynomial fitting", chebyshev, 9, 8192.0),
    ("F2", "Inverse Hilbert matrix", inverse_hilbert, 16, 16384.0),
    ("F3", "Lennard-Jones minimum energy cluster", lennard_jones, 18, 4.0),
]

_SCALABLE = [
    ("F4", "Rastrigin", classical.rastrigin, 5.12 / 100.0),
    ("F5", "Griewank", classical.griewank, 600.0 / 100.0),
    ("F6", "Weierstrass", weierstrass, 0.5 / 100.0),
    ("F7", "Modified Schwefel", modified_schwefel, 1000.0 / 100.0),
    ("F8", "Expanded Schaffer F6", expanded_schaffer_f6, 1.0),
    ("F9", "Happy Cat", happy_cat, 5.0 / 100.0),
    ("F10", "Ackley", classical.ackley, 1.0),
]


def _inverse_hilbert_4() -> np.ndarray:
    idx = np.arange(4)
    hilbert = 1.0 / (idx[:, None] + idx[None, :] + 1.0)
    return np.round(np.linalg.inv(hilbert)).ravel()


def cec2019_suite(dim: int = 10) -> list[ObjectiveSpec]:
    """The ten CEC2019 basics; ``dim`` applies to F4-F10 only."""
    argmins = {"F1": CHEBYSHEV_T8, "F2": _inverse_hilbert_4(), "F3": lennard_jones_octahedron()}
    suite = []
    for fid, name, func, d, half in _FIXED:
        suite.append(ObjectiveSpec(
            id=fid, name=name, dimension=d, bounds=Bounds.uniform(-half, half, d),
            func=_Scaled(func, 1.0), known_min=BIAS, known_argmin=argmins[fid],
            modality=Modality.MULTIMODAL, suite="cec2019",
        ))
    for fid, name, func, scale in _SCALABLE:
        suite.append(ObjectiveSpec(
            id=fid, name=name, dimension=dim, bounds=Bounds.uniform(-100.0, 100.0, dim),
            func=_Scaled(func, scale), known_min=BIAS, known_argmin=np.zeros(dim),
            modality=Modality.MULTIMODAL, resizable=True, suite="cec2019", argmin_component=0.0,
        ))
    return suite
