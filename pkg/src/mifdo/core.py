"""Swarm state and the per-iteration step logic of FDO and M-IFDO.

Both variants share one loop: every iteration the best scout bee of the
population is located, then each bee proposes ``x + pace + lam``, keeps
it only if it strictly improves, otherwise retries once with its last
successful pace, and otherwise stays put.  An accepted move shrinks the
bee's weight factor by redrawing it from ``[0, wf]``.

The variants differ in the pace table and in ``lam``: FDO uses the
distance-to-best table with ``lam = 0``; M-IFDO uses the position-scaled
table with ``lam = 0.1``.  How ``lam`` enters the move is selected by
``lambda_mode``:

``"pace"`` (default)
    ``x + pace + lam * pace``; the Lambda term shrinks with the pace, so
    a collapsed swarm can still refine its best point.
``"constant"``
    ``x + pace + lam`` on every coordinate.  Near a collapsed swarm every
    proposal is offset by ``lam`` per axis from the incumbent, which
    stalls progress at roughly that resolution.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from mifdo.problems.base import Problem
from mifdo.rng import LevyWalkParams, RandomSource, levy_r

__all__ = [
    "Agent",
    "ConvergenceCriteria",
    "ConvergenceTrace",
    "OptimizerConfig",
    "RunResult",
    "StepContext",
    "SwarmState",
    "Variant",
    "diversity",
    "exploration_pct",
    "fitness_weight",
    "fitness_weight_fdo",
    "initialize_swarm",
    "pace_fdo",
    "pace_mifdo",
    "move",
    "propose",
    "run",
    "step_agent",
]


LAMBDA_MODES = ("pace", "constant")


class Variant(str, enum.Enum):
    FDO = "fdo"
    MIFDO = "mifdo"

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "").replace("_", "")
        for v in cls:
            if v.value == key:
                return v
        raise ValueError(f"unknown algorithm {value!r}; valid: fdo, mifdo")


@dataclass
class Agent:
    position: np.ndarray
    fitness: float
    wf: float
    saved_pace: Optional[np.ndarray] = None


@dataclass
class SwarmState:
    agents: list[Agent]
    iter_best: int
    best_position: np.ndarray
    best_fitness: float
    t: int = 0
    eval_count: int = 0
    nonfinite_count: int = 0

    @property
    def positions(self) -> np.ndarray:
        return np.array([a.position for a in self.agents])

    @property
    def fitnesses(self) -> np.ndarray:
        return np.array([a.fitness for a in self.agents])

    def refresh_best(self) -> int:
        """Recompute ``iter_best`` and fold it into the best-ever record."""
        fits = [a.fitness for a in self.agents]
        self.iter_best = int(np.argmin(fits))
        best = self.agents[self.iter_best]
        if best.fitness < self.best_fitness:
            self.best_fitness = best.fitness
            self.best_position = best.position.copy()
        return self.iter_best


@dataclass(frozen=True)
class StepContext:
    fw: float
    r: float
    lam: float
    wf: float


@dataclass(frozen=True)
class OptimizerConfig:
    """Optimizer settings; defaults are 30 bees, 500 iterations and Lambda 0.1."""

    variant: Variant = Variant.MIFDO
    population: int = 30
    max_iterations: int = 500
    lam: float = 0.1
    wf_init_range: tuple[float, float] = (0.0, 1.0)
    seed: int = 0
    levy: LevyWalkParams = field(default_factory=LevyWalkParams)
    lambda_mode: str = "pace"

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if int(self.population) < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if int(self.max_iterations) < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not math.isfinite(self.lam):
            raise ValueError("lam must be finite")
        if self.lambda_mode not in LAMBDA_MODES:
            raise ValueError(f"lambda_mode must be one of {LAMBDA_MODES}, got {self.lambda_mode!r}")
        lo, hi = self.wf_init_range
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError(f"wf_init_range must lie inside [0, 1], got {self.wf_init_range}")

    @property
    def effective_lambda(self) -> float:
        return 0.0 if self.variant is Variant.FDO else float(self.lam)


@dataclass(frozen=True)
class ConvergenceCriteria:
    epsilon: float
    f_optimal: Optional[float] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    def reached(self, best: float) -> bool:
        return self.f_optimal is not None and abs(best - self.f_optimal) < self.epsilon


@dataclass
class ConvergenceTrace:
    best_per_iter: list[float] = field(default_factory=list)
    per_iter_delta: list[float] = field(default_factory=list)
    diversity_per_iter: list[float] = field(default_factory=list)
    exploration_pct_per_iter: list[float] = field(default_factory=list)

    def __len__(self):
        return len(self.best_per_iter)

    def finalize(self) -> None:
        self.exploration_pct_per_iter = [
            exploration_pct(self, t) for t in range(len(self.diversity_per_iter))
        ]

    @property
    def exploitation_pct_per_iter(self) -> list[float]:
        return [100.0 - e for e in self.exploration_pct_per_iter]


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    initial_best: float
    trace: ConvergenceTrace
    eval_count: int
    wall_time: float
    iterations: int
    stop_reason: str
    nonfinite_count: int = 0


# ---------------------------------------------------------------------------
# fitness weight and pace
# ---------------------------------------------------------------------------


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)


def fitness_weight(best_fitness: float, current_fitness: float, wf: float) -> float:
    """M-IFDO fitness weight.

    ``|best / current|``, reduced by ``wf`` only when it exceeds ``wf``, then
    clamped into [0, 1].  A zero current fitness yields 0.
    """
    if current_fitness == 0:
        return 0.0
    raw = abs(best_fitness / current_fitness)
    if raw > wf:
        raw -= wf
    return _clamp01(raw)


def fitness_weight_fdo(best_fitness: float, current_fitness: float, wf: float) -> float:
    """FDO fitness weight: ``|best / current| - wf`` clamped into [0, 1]."""
    if current_fitness == 0:
        return 0.0
    return _clamp01(abs(best_fitness / current_fitness) - wf)


def pace_mifdo(x: np.ndarray, best_x: np.ndarray, fw: float, r: float) -> np.ndarray:
    if fw == 1.0 or fw == 0.0:
        return x * r
    if r < 0:
        return (x - best_x) * fw * -1.0
    return (x - best_x) * fw


def pace_fdo(x: np.ndarray, best_x: np.ndarray, fw: float, r: float) -> np.ndarray:
    distance = best_x - x
    if fw == 1.0:
        return x * r
    if fw == 0.0:
        return distance * r
    if r < 0:
        return distance * fw * -1.0
    return distance * fw


def move(x: np.ndarray, pace: np.ndarray, lam: float, lambda_mode: str = "pace") -> np.ndarray:
    """Unrepaired position after applying ``pace`` and the Lambda term."""
    if lambda_mode == "pace":
        return x + pace + lam * pace
    return x + pace + lam


def propose(
    x: np.ndarray,
    fitness: float,
    best_x: np.ndarray,
    best_fitness: float,
    wf: float,
    r: float,
    variant: Variant,
    lam: float,
    lambda_mode: str = "pace",
) -> tuple[np.ndarray, np.ndarray, StepContext]:
    """First candidate of one agent step, before bound repair.

    Returns ``(candidate, pace, context)``.  ``lam`` is ignored for FDO.
    """
    if variant is Variant.FDO:
        fw = fitness_weight_fdo(best_fitness, fitness, wf)
        pace = pace_fdo(x, best_x, fw, r)
        lam = 0.0
    else:
        fw = fitness_weight(best_fitness, fitness, wf)
        pace = pace_mifdo(x, best_x, fw, r)
    return move(x, pace, lam, lambda_mode), pace, StepContext(fw, r, lam, wf)


# ---------------------------------------------------------------------------
# swarm lifecycle
# ---------------------------------------------------------------------------


def _evaluate(problem: Problem, x: np.ndarray, swarm: SwarmState, source: RandomSource) -> float:
    swarm.eval_count += 1
    f = problem.fitness(x, source)
    if not math.isfinite(f):
        swarm.nonfinite_count += 1
        return math.inf
    return f


def initialize_swarm(problem: Problem, config: OptimizerConfig, source: RandomSource) -> SwarmState:
    if problem.dimension < 1:
        raise ValueError("problem dimension must be positive")
    lo, hi = config.wf_init_range
    swarm = SwarmState(agents=[], iter_best=0, best_position=problem.lower.copy(), best_fitness=math.inf)
    for _ in range(config.population):
        x = source.uniform_vector(problem.lower, problem.upper)
        f = _evaluate(problem, x, swarm, source)
        swarm.agents.append(Agent(x, f, source.uniform(lo, hi)))
    swarm.refresh_best()
    if not math.isfinite(swarm.best_fitness):
        # every initial point was non-finite; keep a valid record anyway
        swarm.best_position = swarm.agents[0].position.copy()
    return swarm


def step_agent(
    agent: Agent,
    swarm: SwarmState,
    problem: Problem,
    config: OptimizerConfig,
    source: RandomSource,
) -> Agent:
    """Advance one scout bee in place and return it."""
    best = swarm.agents[swarm.iter_best]
    r = levy_r(source, config.levy)
    lam = config.effective_lambda
    candidate, pace, _ = propose(
        agent.position, agent.fitness, best.position, best.fitness, agent.wf, r,
        config.variant, lam, config.lambda_mode,
    )
    candidate = np.clip(candidate, problem.lower, problem.upper)
    f = _evaluate(problem, candidate, swarm, source)
    if f < agent.fitness:
        agent.position, agent.fitness, agent.saved_pace = candidate, f, pace
        agent.wf = source.uniform(0.0, agent.wf)
        return agent
    if agent.saved_pace is None:
        return agent
    candidate = move(agent.position, agent.saved_pace, lam, config.lambda_mode)
    candidate = np.clip(candidate, problem.lower, problem.upper)
    f = _evaluate(problem, candidate, swarm, source)
    if f < agent.fitness:
        agent.position, agent.fitness = candidate, f
        agent.wf = source.uniform(0.0, agent.wf)
    return agent


def diversity(swarm: SwarmState | np.ndarray) -> float:
    """Mean Euclidean distance of the agents to their centroid."""
    pos = swarm if isinstance(swarm, np.ndarray) else swarm.positions
    if pos.shape[0] == 0:
        raise ValueError("empty swarm")
    centroid = pos.mean(axis=0)
    return float(np.mean(np.linalg.norm(pos - centroid, axis=1)))


def exploration_pct(trace: ConvergenceTrace, t: int) -> float:
    """Diversity at ``t`` as a percentage of the run's peak diversity."""
    div = trace.diversity_per_iter
    peak = max(div) if div else 0.0
    if peak <= 0.0:
        return 0.0
    return 100.0 * div[t] / peak


Observer = Callable[[SwarmState], None]


def run(
    problem: Problem,
    config: OptimizerConfig,
    criteria: Optional[ConvergenceCriteria] = None,
    source: Optional[RandomSource] = None,
    observer: Optional[Observer] = None,
) -> RunResult:
    """Run one optimization.

    ``observer``, if given, is called with the live swarm after
    initialization and after every iteration.
    """
    if source is None:
        source = RandomSource(config.seed)
    start = time.perf_counter()
    swarm = initialize_swarm(problem, config, source)
    initial_best = swarm.best_fitness
    trace = ConvergenceTrace()
    if observer is not None:
        observer(swarm)
    prev = initial_best
    stop_reason = "max_iterations"
    for t in range(1, config.max_iterations + 1):
        swarm.t = t
        swarm.refresh_best()
        for agent in swarm.agents:
            step_agent(agent, swarm, problem, config, source)
        swarm.refresh_best()
        best = swarm.best_fitness
        trace.best_per_iter.append(best)
        trace.per_iter_delta.append(abs(best - prev) if math.isfinite(best - prev) else math.inf)
        trace.diversity_per_iter.append(diversity(swarm))
        prev = best
        if observer is not None:
            observer(swarm)
        if criteria is not None and criteria.reached(best):
            stop_reason = "converged"
            break
    trace.finalize()
    return RunResult(
        best_position=swarm.best_position.copy(),
        best_fitness=swarm.best_fitness,
        initial_best=initial_best,
        trace=trace,
        eval_count=swarm.eval_count,
        wall_time=time.perf_counter() - start,
        iterations=len(trace),
        stop_reason=stop_reason,
        nonfinite_count=swarm.nonfinite_count,
    )
