"""Constrained real-world problems: antenna array, pressure vessel, random-key TSP."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from mifdo.problems.base import DEFAULT_PENALTY, Problem, constraint_report

__all__ = [
    "AntennaArrayProblem",
    "PressureVesselDesign",
    "TspInstance",
    "aaad_fitness",
    "aaad_problem",
    "array_factor",
    "brute_force_tour",
    "decode_random_key",
    "load_tsp",
    "pvd_constraints",
    "pvd_cost",
    "pvd_problem",
    "pvd_raw_cost",
    "tour_length",
    "tsp_problem",
    "TSP5",
]


# ---------------------------------------------------------------------------
# aperiodic antenna array
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AntennaArrayProblem:
    """Four movable elements plus one fixed element, positions in wavelengths.

    The default steering angle is broadside and the theta grid has 1441
    samples over [0, pi] (1/8 degree resolution).
    """

    fixed_element: float = 2.25
    steering_angle: float = math.pi / 2
    n_theta: int = 1441
    spacing_min: float = 0.25
    element_min: float = 0.125
    element_max: float = 2.0
    box: tuple[float, float] = (0.0, 2.25)
    penalty_coeff: float = DEFAULT_PENALTY
    theta_grid: np.ndarray = field(init=False, repr=False, compare=False)
    u_grid: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_theta < 721:
            raise ValueError("theta grid needs at least 721 samples")
        theta = np.linspace(0.0, math.pi, self.n_theta)
        object.__setattr__(self, "theta_grid", theta)
        object.__setattr__(self, "u_grid", np.cos(theta) - math.cos(self.steering_angle))

    def constraints(self) -> tuple:
        """Inequality constraints ``g(x) <= 0``, one per decoded condition."""
        lo, hi = self.box
        gs = []
        for i in range(4):
            gs.append(lambda x, i=i: self.element_min - x[i])
            gs.append(lambda x, i=i: x[i] - self.element_max)
            gs.append(lambda x, i=i: lo - x[i])
            gs.append(lambda x, i=i: x[i] - hi)
        for i, j in itertools.combinations(range(4), 2):
            gs.append(lambda x, i=i, j=j: self.spacing_min - abs(x[i] - x[j]))
        return tuple(gs)


def _af_u(problem: AntennaArrayProblem, x, u):
    phase = (2.0 * math.pi) * np.multiply.outer(u, np.asarray(x, dtype=float))
    return np.cos(phase).sum(axis=-1) + np.cos((2.0 * math.pi * problem.fixed_element) * u)


def array_factor(problem: AntennaArrayProblem, x, theta):
    """Array factor at ``theta`` (scalar or array)."""
    u = np.cos(np.asarray(theta, dtype=float)) - math.cos(problem.steering_angle)
    af = _af_u(problem, x, u)
    return af if np.ndim(af) else float(af)


def sidelobe_level(problem: AntennaArrayProblem, x) -> float:
    """Peak sidelobe level in dB relative to the main beam (no penalties).

    The main lobe spans the grid between the first local minima of ``|AF|``
    on either side of the steering angle.
    """
    theta = problem.theta_grid
    mag = np.abs(_af_u(problem, x, problem.u_grid))
    main = int(np.argmin(np.abs(theta - problem.steering_angle)))
    peak = abs(float(_af_u(problem, x, 0.0)))
    step = np.diff(mag)
    # walk outward from the beam while |AF| keeps falling
    rising_left = np.flatnonzero(step[:main] < 0.0)
    left = int(rising_left[-1]) + 1 if rising_left.size else 0
    rising_right = np.flatnonzero(step[main:] > 0.0)
    right = main + int(rising_right[0]) if rising_right.size else mag.size - 1
    side = np.concatenate([mag[:left], mag[right + 1:]])
    if side.size == 0 or peak == 0.0:
        return 0.0
    return float(20.0 * np.log10(max(side.max(), 1e-12) / peak))


def aaad_fitness(problem: AntennaArrayProblem, x) -> float:
    """Sidelobe level plus linear penalties for violated layout constraints."""
    x = np.asarray(x, dtype=float)
    violation = sum(max(0.0, g(x)) for g in problem.constraints())
    return sidelobe_level(problem, x) + problem.penalty_coeff * violation


def aaad_problem(spec: AntennaArrayProblem | None = None) -> Problem:
    spec = spec or AntennaArrayProblem()
    return Problem(
        name="aaad", lower=np.full(4, spec.box[0]), upper=np.full(4, spec.box[1]),
        objective=lambda x: sidelobe_level(spec, x), constraints=spec.constraints(),
        penalty_coeff=spec.penalty_coeff, category="engineering", meta={"spec": spec},
    )


# ---------------------------------------------------------------------------
# pressure vessel
# ---------------------------------------------------------------------------

PVD_LOWER = np.array([0.0, 0.0, 10.0, 10.0])
PVD_UPPER = np.array([99.0, 99.0, 200.0, 200.0])


@dataclass(frozen=True)
class PressureVesselDesign:
    """Shell thickness, head thickness, inner radius and length, in inches."""

    shell_thickness: float
    head_thickness: float
    radius: float
    length: float

    def as_array(self) -> np.ndarray:
        return np.array([self.shell_thickness, self.head_thickness, self.radius, self.length])


def _pvd_vector(design) -> np.ndarray:
    if isinstance(design, PressureVesselDesign):
        return design.as_array()
    return np.asarray(design, dtype=float)


def pvd_raw_cost(design) -> float:
    ts, th, r, length = _pvd_vector(design)
    return float(
        0.6224 * ts * r * length + 1.7781 * th * r**2 + 3.1661 * ts**2 * length + 19.84 * ts**2 * r
    )


pvd_constraints = (
    lambda x: -x[0] + 0.0193 * x[2],
    lambda x: -x[1] + 0.00954 * x[2],
    lambda x: -math.pi * x[2] ** 2 * x[3] - 4.0 / 3.0 * math.pi * x[2] ** 3 + 1296000.0,
    lambda x: x[3] - 240.0,
)


def pvd_problem(penalty_coeff: float = DEFAULT_PENALTY) -> Problem:
    return Problem(
        name="pvd", lower=PVD_LOWER, upper=PVD_UPPER, objective=pvd_raw_cost,
        constraints=pvd_constraints, penalty_coeff=penalty_coeff, category="engineering",
    )


def pvd_cost(design, penalty_coeff: float = DEFAULT_PENALTY) -> float:
    """Penalized manufacturing cost of a vessel design."""
    x = _pvd_vector(design)
    violation = sum(max(0.0, g(x)) for g in pvd_constraints)
    return pvd_raw_cost(x) + penalty_coeff * violation


def pvd_feasible(design) -> bool:
    x = _pvd_vector(design)
    return all(g(x) <= 0.0 for g in pvd_constraints)


# ---------------------------------------------------------------------------
# travelling salesman via random keys
# ---------------------------------------------------------------------------


class TspInstance:
    """Euclidean TSP instance."""

    def __init__(self, coords):
        self.coords = np.asarray(coords, dtype=float).reshape(-1, 2)
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        self.distance = np.sqrt(np.sum(diff**2, axis=-1))

    def __len__(self):
        return self.coords.shape[0]

    @classmethod
    def from_file(cls, path) -> "TspInstance":
        """Read ``n`` on the first line, then ``n`` lines of ``x y``."""
        lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
        if not lines:
            raise ValueError(f"{path}: empty TSP file")
        n = int(lines[0])
        if len(lines) - 1 != n:
            raise ValueError(f"{path}: header says {n} cities, found {len(lines) - 1}")
        coords = [tuple(float(v) for v in ln.split()[:2]) for ln in lines[1:]]
        return cls(coords)


load_tsp = TspInstance.from_file


def decode_random_key(keys, instance: TspInstance | None = None) -> list[int]:
    """Visit order given by sorting ``keys``; ties keep index order."""
    keys = np.asarray(keys, dtype=float)
    if instance is not None and keys.size != len(instance):
        raise ValueError(f"expected {len(instance)} keys, got {keys.size}")
    return np.argsort(keys, kind="stable").tolist()


def tour_length(perm, instance: TspInstance) -> float:
    perm = list(perm)
    if len(perm) < 2:
        return 0.0
    d = instance.distance
    return float(sum(d[perm[i], perm[(i + 1) % len(perm)]] for i in range(len(perm))))


def brute_force_tour(instance: TspInstance) -> tuple[list[int], float]:
    """Exact optimum by enumerating the (n-1)!/2 distinct closed tours."""
    n = len(instance)
    if n <= 3:
        perm = list(range(n))
        return perm, tour_length(perm, instance)
    best, best_len = None, math.inf
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:
            continue  # reversed duplicate
        perm = [0, *rest]
        length = tour_length(perm, instance)
        if length < best_len:
            best, best_len = perm, length
    return best, best_len


def tsp_problem(instance: TspInstance, name: str = "tsp") -> Problem:
    n = len(instance)
    return Problem(
        name=name, lower=np.zeros(n), upper=np.ones(n),
        objective=lambda k: tour_length(decode_random_key(k), instance),
        category="engineering", meta={"instance": instance},
    )


# fixed 5-city instance used by the benchmark registry and tests
TSP5 = TspInstance([(0.0, 0.0), (5.0, 4.0), (3.0, 1.0), (1.0, 5.0), (6.0, 0.0)])
