"""Run-batch statistics and the two-sided Wilcoxon signed-rank test."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "EXACT_MAX_N",
    "ComparisonTable",
    "RunBatch",
    "Summary",
    "WilcoxonResult",
    "compare_algorithms",
    "describe",
    "signed_ranks",
    "wilcoxon_signed_rank",
]

EXACT_MAX_N = 12


@dataclass(frozen=True)
class RunBatch:
    final_bests: tuple[float, ...]
    runtimes: tuple[float, ...] = ()
    success_threshold: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "final_bests", tuple(float(v) for v in self.final_bests))
        runtimes = tuple(float(v) for v in self.runtimes) or (0.0,) * len(self.final_bests)
        object.__setattr__(self, "runtimes", runtimes)
        if len(self.final_bests) < 1:
            raise ValueError("a batch needs at least one run")
        if len(runtimes) != len(self.final_bests):
            raise ValueError("final_bests and runtimes differ in length")


@dataclass(frozen=True)
class Summary:
    mean: float
    sd: float
    best: float
    worst: float
    avg_runtime: float
    n_success: Optional[int]
    n_failure: Optional[int]


def describe(batch: RunBatch) -> Summary:
    """Mean, sample SD, best, worst, mean runtime and success counts.

    Success means ``final_best <= success_threshold``; without a threshold
    the success counts are ``None``.
    """
    vals = batch.final_bests
    n = len(vals)
    mean = math.fsum(vals) / n
    sd = statistics.stdev(vals) if n >= 2 else 0.0
    if batch.success_threshold is None:
        ok = fail = None
    else:
        ok = sum(v <= batch.success_threshold for v in vals)
        fail = n - ok
    return Summary(mean, sd, min(vals), max(vals), math.fsum(batch.runtimes) / n, ok, fail)


@dataclass(frozen=True)
class WilcoxonResult:
    t_plus: float
    t_minus: float
    p_value: float
    alpha: float
    win: str  # "plus" (first sample better), "minus" or "tie"
    n_effective: int
    method: str = "exact"

    @property
    def symbol(self) -> str:
        return {"plus": "+", "minus": "-", "tie": "="}[self.win]


def signed_ranks(differences) -> tuple[np.ndarray, np.ndarray]:
    """Drop zero differences; return (average ranks of |d|, signs)."""
    d = np.asarray(differences, dtype=float)
    d = d[d != 0.0]
    absd = np.abs(d)
    order = np.argsort(absd, kind="stable")
    ranks = np.empty(d.size)
    i = 0
    while i < d.size:
        j = i
        while j + 1 < d.size and absd[order[j + 1]] == absd[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks, np.sign(d)


def _exact_p(ranks: np.ndarray, t_plus: float) -> float:
    # ranks are multiples of 1/2, so doubled ranks are integers
    doubled = np.rint(2.0 * ranks).astype(int)
    total = int(doubled.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    counts /= counts.sum()
    t2 = int(round(2.0 * t_plus))
    lower = counts[: t2 + 1].sum()
    upper = counts[t2:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def _normal_p(ranks: np.ndarray, t_plus: float) -> float:
    n = ranks.size
    mean = n * (n + 1) / 4.0
    ties = Counter(ranks.tolist()).values()
    var = n * (n + 1) * (2 * n + 1) / 24.0 - sum(t**3 - t for t in ties) / 48.0
    if var <= 0.0:
        return 1.0
    z = max(abs(t_plus - mean) - 0.5, 0.0) / math.sqrt(var)
    return float(min(1.0, math.erfc(z / math.sqrt(2.0))))


def wilcoxon_signed_rank(
    a: Sequence[float],
    b: Sequence[float],
    alpha: float = 0.05,
    method: str = "auto",
) -> WilcoxonResult:
    """Two-sided paired Wilcoxon signed-rank test on ``a - b``.

    ``method`` is ``"exact"``, ``"normal"`` or ``"auto"`` (exact up to
    12 non-zero differences).  For minimization, ``win == "plus"`` means
    sample ``a`` is significantly better (smaller median).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"paired samples must have equal length, got {a.shape} and {b.shape}")
    ranks, signs = signed_ranks(a - b)
    n = ranks.size
    if n == 0:
        return WilcoxonResult(0.0, 0.0, 1.0, alpha, "tie", 0, "degenerate")
    t_plus = float(ranks[signs > 0].sum())
    t_minus = float(ranks[signs < 0].sum())
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N else "normal"
    if method == "exact":
        p = _exact_p(ranks, t_plus)
    elif method == "normal":
        p = _normal_p(ranks, t_plus)
    else:
        raise ValueError(f"unknown method {method!r}")
    win = "tie"
    if p < alpha:
        ma, mb = float(np.median(a)), float(np.median(b))
        if ma != mb:
            win = "plus" if ma < mb else "minus"
        else:
            win = "plus" if t_plus < t_minus else "minus"
    return WilcoxonResult(t_plus, t_minus, p, alpha, win, n, method)


@dataclass
class ComparisonTable:
    """Wilcoxon outcomes of a reference algorithm against each competitor."""

    reference: str
    competitors: list[str]
    problems: list[str]
    results: dict[tuple[str, str], WilcoxonResult] = field(default_factory=dict)

    def tally(self, competitor: str) -> tuple[int, int, int]:
        """(wins, ties, losses) of the reference against ``competitor``."""
        wins = ties = losses = 0
        for p in self.problems:
            w = self.results[(p, competitor)].win
            if w == "plus":
                wins += 1
            elif w == "minus":
                losses += 1
            else:
                ties += 1
        return wins, ties, losses


def compare_algorithms(
    batches: Mapping[str, Mapping[str, RunBatch]],
    reference: str,
    alpha: float = 0.05,
) -> ComparisonTable:
    """Compare ``reference`` with every other algorithm on every problem.

    ``batches`` maps problem name to a mapping of algorithm name to batch.
    """
    problems = list(batches)
    if not problems:
        raise ValueError("no problems to compare")
    algos = list(batches[problems[0]])
    if reference not in algos:
        raise ValueError(f"reference algorithm {reference!r} has no batches")
    competitors = [a for a in algos if a != reference]
    table = ComparisonTable(reference, competitors, problems)
    for p in problems:
        for algo in [reference, *competitors]:
            if algo not in batches[p]:
                raise ValueError(f"missing batch for algorithm {algo!r} on problem {p!r}")
        ref = batches[p][reference].final_bests
        for c in competitors:
            table.results[(p, c)] = wilcoxon_signed_rank(ref, batches[p][c].final_bests, alpha)
    return table
