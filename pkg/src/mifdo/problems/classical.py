"""The 19-function classical suite TF1-TF19.

TF1-TF7 are unimodal, TF8-TF13 multimodal and TF14-TF19 composite
blends of shifted sphere, Griewank, Rastrigin, Weierstrass and Ackley
landscapes on ``[-5, 5]^d``.
"""

from __future__ import annotations

import numpy as np

from mifdo.problems import functions as fn
from mifdo.problems.base import Problem
from mifdo.problems.composite import make_composite

DEFAULT_DIM = 10
COMPOSITE_SHIFT_SEED = 14
COMPOSITE_BIASES = tuple(100.0 * i for i in range(10))

# (key, function, half-width of symmetric box, optimum coordinate, category)
_BASIC = [
    ("tf1", fn.sphere, 100.0, 0.0, "unimodal"),
    ("tf2", fn.schwefel_2_22, 10.0, 0.0, "unimodal"),
    ("tf3", fn.schwefel_1_2, 100.0, 0.0, "unimodal"),
    ("tf4", fn.schwefel_2_21, 100.0, 0.0, "unimodal"),
    ("tf5", fn.rosenbrock, 30.0, 1.0, "unimodal"),
    ("tf6", fn.step, 100.0, 0.0, "unimodal"),
    ("tf7", fn.quartic_noise, 1.28, 0.0, "unimodal"),
    ("tf8", fn.schwefel_2_26, 500.0, fn.SCHWEFEL_ARGMIN, "multimodal"),
    ("tf9", fn.rastrigin, 5.12, 0.0, "multimodal"),
    ("tf10", fn.ackley, 32.0, 0.0, "multimodal"),
    ("tf11", fn.griewank, 600.0, 0.0, "multimodal"),
    ("tf12", fn.penalized_1, 50.0, -1.0, "multimodal"),
    ("tf13", fn.penalized_2, 50.0, 1.0, "multimodal"),
]

_CF6_STRETCH = [1 / 5, 1 / 5, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100, 5 / 32, 5 / 32, 5 / 100, 5 / 100]

# (key, component functions, sigmas, stretches)
_COMPOSITES = [
    ("tf14", [fn.sphere] * 10, [1.0] * 10, [5 / 100] * 10),
    ("tf15", [fn.griewank] * 10, [1.0] * 10, [5 / 100] * 10),
    ("tf16", [fn.griewank] * 10, [1.0] * 10, [1.0] * 10),
    (
        "tf17",
        [fn.ackley, fn.ackley, fn.rastrigin, fn.rastrigin, fn.weierstrass,
         fn.weierstrass, fn.griewank, fn.griewank, fn.sphere, fn.sphere],
        [1.0] * 10,
        [5 / 32, 5 / 32, 1, 1, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100, 5 / 100, 5 / 100],
    ),
    (
        "tf18",
        [fn.rastrigin, fn.rastrigin, fn.weierstrass, fn.weierstrass, fn.griewank,
         fn.griewank, fn.ackley, fn.ackley, fn.sphere, fn.sphere],
        [1.0] * 10,
        [1 / 5, 1 / 5, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100, 5 / 32, 5 / 32, 5 / 100, 5 / 100],
    ),
    (
        "tf19",
        [fn.rastrigin, fn.rastrigin, fn.weierstrass, fn.weierstrass, fn.griewank,
         fn.griewank, fn.ackley, fn.ackley, fn.sphere, fn.sphere],
        [0.1 * (i + 1) for i in range(10)],
        [0.1 * (i + 1) * s for i, s in enumerate(_CF6_STRETCH)],
    ),
]

CLASSICAL_NAMES = tuple(k for k, *_ in _BASIC) + tuple(k for k, *_ in _COMPOSITES)


def composite_shifts(dim: int, seed: int = COMPOSITE_SHIFT_SEED) -> np.ndarray:
    """Ten seeded shift vectors inside ``[-4, 4]^dim``."""
    gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return gen.uniform(-4.0, 4.0, size=(10, dim))


def _basic_problem(key, func, half, opt, category, dim):
    lo = np.full(dim, -half)
    hi = np.full(dim, half)
    x_opt = np.full(dim, opt)
    stochastic = func is fn.quartic_noise
    f_opt = 0.0 if stochastic else func(x_opt)
    return Problem(
        name=key, lower=lo, upper=hi, objective=func, known_optimum=f_opt,
        optimum_x=x_opt, stochastic=stochastic, category=category,
    )


def _composite_problem(key, funcs, sigmas, stretches, dim):
    shifts = composite_shifts(dim)
    cf = make_composite(funcs, shifts, sigmas, stretches, COMPOSITE_BIASES)
    x_opt = shifts[0].copy()
    return Problem(
        name=key, lower=np.full(dim, -5.0), upper=np.full(dim, 5.0), objective=cf,
        known_optimum=cf(x_opt), optimum_x=x_opt, category="composite",
        meta={"spec": cf.spec},
    )


def classical_problem(name: str, dim: int = DEFAULT_DIM) -> Problem:
    """Build one classical problem by key (``tf1`` .. ``tf19``)."""
    key = name.lower()
    for k, func, half, opt, cat in _BASIC:
        if k == key:
            return _basic_problem(k, func, half, opt, cat, dim)
    for k, funcs, sigmas, stretches in _COMPOSITES:
        if k == key:
            return _composite_problem(k, funcs, sigmas, stretches, dim)
    raise KeyError(f"unknown classical problem {name!r}; valid: {', '.join(CLASSICAL_NAMES)}")


def classical_suite(dim: int = DEFAULT_DIM) -> list[Problem]:
    return [classical_problem(k, dim) for k in CLASSICAL_NAMES]
