"""Basic benchmark landscapes, each taking a single 1-D vector."""

from __future__ import annotations

import numpy as np

SCHWEFEL_ARGMIN = 420.9687462275036


def sphere(x):
    return float(np.dot(x, x))


def schwefel_2_22(x):
    a = np.abs(x)
    return float(a.sum() + np.prod(a))


def schwefel_1_2(x):
    c = np.cumsum(x)
    return float(np.dot(c, c))


def schwefel_2_21(x):
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1.0) ** 2))


def step(x):
    return float(np.sum(np.floor(x + 0.5) ** 2))


def quartic(x):
    i = np.arange(1, x.size + 1)
    return float(np.sum(i * x**4))


def quartic_noise(x, source):
    return quartic(x) + float(source.random())


def schwefel_2_26(x):
    return float(np.sum(-x * np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    return float(np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0))


def ackley(x):
    n = x.size
    a = -20.0 * np.exp(-0.2 * np.sqrt(np.dot(x, x) / n))
    b = -np.exp(np.sum(np.cos(2.0 * np.pi * x)) / n)
    return float(a + b + 20.0 + np.e)


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def _u(x, a, k, m):
    return k * ((x - a) ** m * (x > a) + (-x - a) ** m * (x < -a))


def penalized_1(x):
    n = x.size
    y = 1.0 + (x + 1.0) / 4.0
    body = (
        10.0 * np.sin(np.pi * y[0]) ** 2
        + np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[1:]) ** 2))
        + (y[-1] - 1.0) ** 2
    )
    return float(np.pi / n * body + np.sum(_u(x, 10.0, 100.0, 4)))


def penalized_2(x):
    body = (
        np.sin(3.0 * np.pi * x[0]) ** 2
        + np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[1:]) ** 2))
        + (x[-1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[-1]) ** 2)
    )
    return float(0.1 * body + np.sum(_u(x, 5.0, 100.0, 4)))


_WEIERSTRASS_K = np.arange(21)
_WEIERSTRASS_AK = 0.5**_WEIERSTRASS_K
_WEIERSTRASS_BK = 3.0**_WEIERSTRASS_K


def weierstrass(x):
    """Weierstrass with a=0.5, b=3, k_max=20; minimum 0 at the origin."""
    terms = _WEIERSTRASS_AK * np.cos(2.0 * np.pi * _WEIERSTRASS_BK * (x[:, None] + 0.5))
    offset = x.size * np.sum(_WEIERSTRASS_AK * np.cos(np.pi * _WEIERSTRASS_BK))
    return float(terms.sum() - offset)


def modified_schwefel(x):
    """Shifted Schwefel variant with boundary handling; minimum near 0 at the origin."""
    n = x.size
    z = x + SCHWEFEL_ARGMIN
    out = np.empty_like(z)
    mid = np.abs(z) <= 500.0
    out[mid] = z[mid] * np.sin(np.sqrt(np.abs(z[mid])))
    hi = z > 500.0
    zm = 500.0 - np.fmod(z[hi], 500.0)
    out[hi] = zm * np.sin(np.sqrt(zm)) - (z[hi] - 500.0) ** 2 / (10000.0 * n)
    lo = z < -500.0
    zm = np.fmod(np.abs(z[lo]), 500.0) - 500.0
    out[lo] = zm * np.sin(np.sqrt(np.abs(zm))) - (z[lo] + 500.0) ** 2 / (10000.0 * n)
    return float(418.9828872724338 * n - out.sum())


def expanded_schaffer_f6(x):
    y = np.roll(x, -1)
    s = x**2 + y**2
    g = 0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2
    return float(g.sum())


def happy_cat(x, alpha=0.125):
    """Happy Cat; minimum 0 at ``x = -1`` (callers shift by one)."""
    n = x.size
    r2 = np.dot(x, x)
    return float(abs(r2 - n) ** (2.0 * alpha) + (0.5 * r2 + x.sum()) / n + 0.5)


# Storn's Chebyshev fitting problem, d=9 (degree-8 polynomial)
_CHEBYSHEV_D = 72.661


def storn_chebyshev(x):
    n = x.size
    m = 32 * n
    powers = np.arange(n - 1, -1, -1)
    u = float(np.sum(x * 1.2**powers))
    v = float(np.sum(x * (-1.2) ** powers))
    p1 = (u - _CHEBYSHEV_D) ** 2 if u < _CHEBYSHEV_D else 0.0
    p2 = (v - _CHEBYSHEV_D) ** 2 if v < _CHEBYSHEV_D else 0.0
    pts = 2.0 * np.arange(m + 1) / m - 1.0
    w = np.polyval(x, pts)
    p3 = float(np.sum(np.where(w > 1.0, (w - 1.0) ** 2, 0.0) + np.where(w < -1.0, (w + 1.0) ** 2, 0.0)))
    return p1 + p2 + p3


def _hilbert(n):
    i = np.arange(n)
    return 1.0 / (i[:, None] + i[None, :] + 1.0)


def inverse_hilbert(x):
    """Sum of absolute entries of ``H Z - I`` for the 4x4 Hilbert matrix H."""
    n = int(round(np.sqrt(x.size)))
    z = x.reshape(n, n)
    w = _hilbert(n) @ z - np.eye(n)
    return float(np.abs(w).sum())


def inverse_hilbert_solution(n=4):
    return np.linalg.inv(_hilbert(n)).reshape(-1)


LENNARD_JONES_6_MIN = -12.7120622568


def lennard_jones(x):
    """Lennard-Jones cluster energy, shifted so the 6-atom optimum is 0."""
    pts = x.reshape(-1, 3)
    diff = pts[:, None, :] - pts[None, :, :]
    r2 = np.sum(diff**2, axis=-1)
    iu = np.triu_indices(pts.shape[0], k=1)
    r2 = np.maximum(r2[iu], 1e-16)
    inv6 = 1.0 / r2**3
    energy = float(np.sum(inv6 * inv6 - 2.0 * inv6))
    return energy - LENNARD_JONES_6_MIN
