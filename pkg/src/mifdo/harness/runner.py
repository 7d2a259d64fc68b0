"""Seeded multi-run execution and aggregation."""

from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from mifdo.core import ConvergenceTrace, OptimizerConfig, run
from mifdo.harness.config import ExperimentConfig
from mifdo.harness.registry import get_problem
from mifdo.rng import RandomSource
from mifdo.stats import ComparisonTable, RunBatch, Summary, compare_algorithms, describe

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, algorithm: str, problem: str, run_index: int) -> int:
    """Stable 64-bit seed for one run: ``base_seed XOR blake2b(algo, problem, run)``."""
    digest = hashlib.blake2b(f"{algorithm}|{problem}|{run_index}".encode(), digest_size=8).digest()
    return (int(base_seed) ^ int.from_bytes(digest, "little")) & _MASK64


@dataclass(frozen=True)
class RunTask:
    algorithm: str
    problem: str
    run_index: int
    seed: int
    iterations: int
    population: int
    lam: float
    lambda_mode: str
    dim: Optional[int]
    shift_seed: int


@dataclass
class RunRecord:
    task: RunTask
    best: float = math.nan
    runtime: float = 0.0
    evals: int = 0
    iterations: int = 0
    trace: Optional[ConvergenceTrace] = None
    error: Optional[str] = None


def execute_task(task: RunTask) -> RunRecord:
    """Run one task; failures are captured in the record, never raised."""
    try:
        problem = get_problem(task.problem, task.dim, task.shift_seed)
        cfg = OptimizerConfig(
            variant=task.algorithm, population=task.population, max_iterations=task.iterations,
            lam=task.lam, lambda_mode=task.lambda_mode, seed=task.seed,
        )
        res = run(problem, cfg, source=RandomSource(task.seed, task.run_index))
    except Exception as exc:  # noqa: BLE001 - one bad cell must not abort the rest
        log.warning("run %s/%s/%d failed: %s", task.algorithm, task.problem, task.run_index, exc)
        return RunRecord(task, error=f"{type(exc).__name__}: {exc}")
    return RunRecord(
        task, best=res.best_fitness, runtime=res.wall_time, evals=res.eval_count,
        iterations=res.iterations, trace=res.trace,
    )


@dataclass
class CellReport:
    algorithm: str
    problem: str
    summary: Optional[Summary]
    mean_evals: float
    batch: Optional[RunBatch]
    best_trace: Optional[ConvergenceTrace]
    errors: list[str] = field(default_factory=list)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    cells: list[CellReport]
    comparison: Optional[ComparisonTable] = None

    def cell(self, algorithm: str, problem: str) -> CellReport:
        for c in self.cells:
            if c.algorithm == algorithm and c.problem == problem:
                return c
        raise KeyError((algorithm, problem))


def build_tasks(config: ExperimentConfig) -> list[RunTask]:
    tasks = []
    for algo in config.algorithms:
        for prob in config.problem_names:
            for r in range(config.runs):
                tasks.append(RunTask(
                    algo, prob, r, derive_seed(config.base_seed, algo, prob, r),
                    config.iterations, config.population, config.lam, config.lambda_mode,
                    config.dim, config.shift_seed,
                ))
    return tasks


def reference_algorithm(config: ExperimentConfig) -> str:
    return "mifdo" if "mifdo" in config.algorithms else config.algorithms[0]


def execute(config: ExperimentConfig) -> ExperimentReport:
    """Run every (algorithm, problem, run) cell and aggregate.

    Results are keyed by task index, so the report does not depend on
    ``config.jobs`` or on scheduling order.
    """
    config.validate()
    tasks = build_tasks(config)
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(execute_task, tasks, chunksize=max(1, len(tasks) // (4 * config.jobs))))
    else:
        records = [execute_task(t) for t in tasks]
    by_cell: dict[tuple[str, str], list[RunRecord]] = {}
    for rec in records:
        by_cell.setdefault((rec.task.algorithm, rec.task.problem), []).append(rec)

    cells = []
    batches: dict[str, dict[str, RunBatch]] = {}
    for algo in config.algorithms:
        for prob in config.problem_names:
            recs = sorted(by_cell[(algo, prob)], key=lambda r: r.task.run_index)
            ok = [r for r in recs if r.error is None]
            errors = [r.error for r in recs if r.error is not None]
            if not ok:
                cells.append(CellReport(algo, prob, None, 0.0, None, None, errors))
                continue
            known = get_problem(prob, config.dim, config.shift_seed).known_optimum
            threshold = None if known is None else known + config.success_tol
            batch = RunBatch([r.best for r in ok], [r.runtime for r in ok], threshold)
            best_rec = min(ok, key=lambda r: (r.best, r.task.run_index))
            cells.append(CellReport(
                algo, prob, describe(batch), float(np.mean([r.evals for r in ok])),
                batch, best_rec.trace, errors,
            ))
            if not errors:
                batches.setdefault(prob, {})[algo] = batch

    comparison = None
    if len(config.algorithms) >= 2:
        complete = {p: b for p, b in batches.items() if len(b) == len(config.algorithms)}
        if complete:
            comparison = compare_algorithms(complete, reference_algorithm(config), config.alpha)
    return ExperimentReport(config, cells, comparison)
