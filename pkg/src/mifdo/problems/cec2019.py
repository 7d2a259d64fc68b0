"""CEC-C06 2019 style suite with seeded synthetic shifts and rotations.

CEC01-CEC03 are the non-scalable Chebyshev, inverse Hilbert and
Lennard-Jones problems on their native boxes.  CEC04-CEC10 wrap a basic
function as ``base(scale * R (x - o)) + 1`` on ``[-100, 100]^10``, where
``o`` is drawn from the middle half of the box and ``R`` is a random
orthonormal matrix.  Every function has its global minimum at value 1
(up to the small residual of the modified Schwefel landscape).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mifdo.problems import functions as fn
from mifdo.problems.base import Problem

DEFAULT_SHIFT_SEED = 2019
CEC_BIAS = 1.0
CEC_NAMES = tuple(f"cec{i:02d}" for i in range(1, 11))


def random_rotation(gen: np.random.Generator, dim: int) -> np.ndarray:
    """Orthonormal matrix from the QR factorization of a Gaussian matrix."""
    q, r = np.linalg.qr(gen.standard_normal((dim, dim)))
    # sign fix makes the draw Haar-distributed
    return q * np.sign(np.diag(r))


@dataclass(frozen=True)
class ShiftedRotated:
    """Objective ``base(scale * R (x - shift) + offset) + bias``."""

    base: object
    shift: np.ndarray
    rotation: np.ndarray
    scale: float = 1.0
    offset: float = 0.0
    bias: float = CEC_BIAS

    def transform(self, x):
        return self.scale * (self.rotation @ (np.asarray(x, dtype=float) - self.shift)) + self.offset

    def __call__(self, x):
        return self.base(self.transform(x)) + self.bias


@dataclass(frozen=True)
class Biased:
    base: object
    bias: float = CEC_BIAS

    def __call__(self, x):
        return self.base(np.asarray(x, dtype=float)) + self.bias


# (base, input scale, input offset); offsets move the base optimum to the origin
_SCALABLE = {
    "cec04": (fn.rastrigin, 5.12 / 100.0, 0.0),
    "cec05": (fn.griewank, 600.0 / 100.0, 0.0),
    "cec06": (fn.weierstrass, 0.5 / 100.0, 0.0),
    "cec07": (fn.modified_schwefel, 1000.0 / 100.0, 0.0),
    "cec08": (fn.expanded_schaffer_f6, 1.0, 0.0),
    "cec09": (fn.happy_cat, 5.0 / 100.0, -1.0),
    "cec10": (fn.ackley, 1.0, 0.0),
}


def _fixed_problems() -> list[Problem]:
    cheb_opt = np.array([128.0, 0.0, -256.0, 0.0, 160.0, 0.0, -32.0, 0.0, 1.0])
    hilb_opt = fn.inverse_hilbert_solution(4)
    out = [
        Problem("cec01", np.full(9, -8192.0), np.full(9, 8192.0), Biased(fn.storn_chebyshev),
                known_optimum=CEC_BIAS, optimum_x=cheb_opt, category="cec"),
        Problem("cec02", np.full(16, -16384.0), np.full(16, 16384.0), Biased(fn.inverse_hilbert),
                known_optimum=CEC_BIAS, optimum_x=hilb_opt, category="cec"),
        Problem("cec03", np.full(18, -4.0), np.full(18, 4.0), Biased(fn.lennard_jones),
                known_optimum=CEC_BIAS, category="cec"),
    ]
    return out


def _scalable_problem(name: str, gen: np.random.Generator, dim: int = 10) -> Problem:
    base, scale, offset = _SCALABLE[name]
    lo, hi = -100.0, 100.0
    shift = gen.uniform(lo / 2.0, hi / 2.0, size=dim)
    rot = random_rotation(gen, dim)
    obj = ShiftedRotated(base, shift, rot, scale, offset)
    return Problem(
        name, np.full(dim, lo), np.full(dim, hi), obj,
        known_optimum=obj(shift), optimum_x=shift, category="cec",
        meta={"shift": shift, "rotation": rot, "base_min": base(np.full(dim, offset))},
    )


def cec2019_suite(shift_seed: int = DEFAULT_SHIFT_SEED) -> list[Problem]:
    """Return CEC01-CEC10; shift/rotation data depend only on ``shift_seed``."""
    problems = _fixed_problems()
    for i, name in enumerate(_SCALABLE):
        # one child stream per function keeps each function's data stable
        ss = np.random.SeedSequence(int(shift_seed) & ((1 << 64) - 1), spawn_key=(i,))
        gen = np.random.Generator(np.random.PCG64(ss))
        problems.append(_scalable_problem(name, gen))
    return problems


def cec2019_problem(name: str, shift_seed: int = DEFAULT_SHIFT_SEED) -> Problem:
    key = name.lower()
    for p in cec2019_suite(shift_seed):
        if p.name == key:
            return p
    raise KeyError(f"unknown CEC problem {name!r}; valid: {', '.join(CEC_NAMES)}")
