"""Problem abstraction, penalty/repair constraint handling and a grid oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from mifdo.rng import RandomSource

__all__ = [
    "DEFAULT_PENALTY",
    "ConstraintReport",
    "Problem",
    "brute_force_min",
    "constraint_report",
    "evaluate",
    "manifest_table",
    "penalized_fitness",
    "repair",
]

DEFAULT_PENALTY = 1e6
MAX_GRID_POINTS = 10**7

Objective = Callable[..., float]
Constraint = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class Problem:
    """A bounded minimization problem.

    Attributes:
        name: Identifier used by the registry and in reports.
        lower, upper: Per-coordinate closed bounds.
        objective: ``f(x)`` or, when ``stochastic``, ``f(x, source)``.
        constraints: Inequality functions ``g(x) <= 0``.
        known_optimum: Global minimum value, if known.
        optimum_x: A point achieving ``known_optimum``, if known.
        stochastic: Whether ``objective`` consumes a :class:`RandomSource`.
        penalty_coeff: Coefficient used by :meth:`fitness`.
        category: Free-form tag (``unimodal``, ``multimodal``, ...).
    """

    name: str
    lower: np.ndarray
    upper: np.ndarray
    objective: Objective
    constraints: tuple = ()
    known_optimum: Optional[float] = None
    optimum_x: Optional[np.ndarray] = None
    stochastic: bool = False
    penalty_coeff: float = DEFAULT_PENALTY
    category: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).reshape(-1)
        upper = np.asarray(self.upper, dtype=float).reshape(-1)
        if lower.size == 0:
            raise ValueError(f"{self.name}: dimension must be positive")
        if lower.shape != upper.shape:
            raise ValueError(f"{self.name}: lower/upper bounds differ in length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ValueError(f"{self.name}: bounds must be finite")
        if np.any(lower > upper):
            raise ValueError(f"{self.name}: lower bound exceeds upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.optimum_x is not None:
            opt = np.asarray(self.optimum_x, dtype=float).reshape(-1)
            opt.flags.writeable = False
            object.__setattr__(self, "optimum_x", opt)
        if not self.penalty_coeff > 0:
            raise ValueError(f"{self.name}: penalty_coeff must be positive")

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def bounds(self) -> list[tuple[float, float]]:
        return list(zip(self.lower.tolist(), self.upper.tolist()))

    def fitness(self, x, source: RandomSource | None = None) -> float:
        """Value the optimizer minimizes: the objective plus constraint penalty."""
        if self.constraints:
            return penalized_fitness(self, x, self.penalty_coeff, source)
        return evaluate(self, x, source)


@dataclass(frozen=True)
class ConstraintReport:
    violations: tuple[float, ...]
    total: float

    @property
    def feasible(self) -> bool:
        return self.total == 0.0


def _as_point(problem: Problem, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != problem.dimension:
        raise ValueError(
            f"{problem.name}: expected a vector of length {problem.dimension}, "
            f"got shape {x.shape}"
        )
    return x


def evaluate(problem: Problem, x, source: RandomSource | None = None) -> float:
    """Evaluate the raw objective of ``problem`` at ``x``.

    Stochastic objectives need ``source``; a fresh seed-0 source is used
    when none is supplied so that calls stay reproducible.
    """
    x = _as_point(problem, x)
    if problem.stochastic:
        if source is None:
            source = RandomSource(0)
        return float(problem.objective(x, source))
    return float(problem.objective(x))


def constraint_report(problem: Problem, x) -> ConstraintReport:
    x = _as_point(problem, x)
    violations = tuple(max(0.0, float(g(x))) for g in problem.constraints)
    return ConstraintReport(violations, float(sum(violations)))


def penalized_fitness(
    problem: Problem,
    x,
    penalty_coeff: float = DEFAULT_PENALTY,
    source: RandomSource | None = None,
) -> float:
    """``objective(x) + penalty_coeff * sum_j max(0, g_j(x))``."""
    if not penalty_coeff > 0:
        raise ValueError("penalty_coeff must be positive")
    raw = evaluate(problem, x, source)
    if not problem.constraints:
        return raw
    total = constraint_report(problem, x).total
    if total == 0.0:
        return raw
    return raw + penalty_coeff * total


def repair(problem: Problem, x) -> np.ndarray:
    """Clamp every coordinate of ``x`` into the problem's box."""
    x = _as_point(problem, x)
    return np.clip(x, problem.lower, problem.upper)


def brute_force_min(problem: Problem, grid_points_per_axis: int) -> tuple[np.ndarray, float]:
    """Exhaustive grid search over the problem box (d <= 3 only).

    Returns the grid point with the smallest penalized fitness and that value.
    """
    d = problem.dimension
    n = int(grid_points_per_axis)
    if n < 1:
        raise ValueError("grid_points_per_axis must be positive")
    if d > 3:
        raise ValueError(f"brute_force_min supports d <= 3, got d={d}")
    if n**d > MAX_GRID_POINTS:
        raise ValueError(f"grid of {n}**{d} points exceeds {MAX_GRID_POINTS}")
    axes = [np.linspace(lo, hi, n) for lo, hi in problem.bounds]
    best_x, best_f = None, math.inf
    for point in itertools.product(*axes):
        x = np.array(point)
        f = problem.fitness(x)
        if f < best_f:
            best_x, best_f = x, f
    return best_x, best_f


def manifest_table(problems: Sequence[Problem]) -> str:
    """Plain-text table of name, dimension, bounds and known optimum."""
    rows = [("name", "d", "bounds", "known_optimum")]
    for p in problems:
        if np.all(p.lower == p.lower[0]) and np.all(p.upper == p.upper[0]):
            bounds = f"[{p.lower[0]:g}, {p.upper[0]:g}]^{p.dimension}"
        else:
            bounds = " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in p.bounds)
        opt = "-" if p.known_optimum is None else f"{p.known_optimum:.10g}"
        rows.append((p.name, str(p.dimension), bounds, opt))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
