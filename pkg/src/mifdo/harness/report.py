"""CSV / Markdown report writers and per-iteration trace files."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Optional

from mifdo.core import ConvergenceTrace
from mifdo.harness.runner import ExperimentReport

CSV_COLUMNS = (
    "algorithm", "problem", "mean", "sd", "best", "worst",
    "avg_runtime_s", "evals", "n_success", "n_failure",
)
TRACE_COLUMNS = ("iter", "best", "delta", "diversity", "exploration_pct")

NA = "NA"


def _num(v) -> str:
    if v is None:
        return NA
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _short(v) -> str:
    return NA if v is None else f"{v:.4E}"


def render_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    timing = report.config.timing
    for c in report.cells:
        s = c.summary
        if s is None:
            w.writerow([c.algorithm, c.problem] + [NA] * (len(CSV_COLUMNS) - 2))
            continue
        w.writerow([
            c.algorithm, c.problem, _num(s.mean), _num(s.sd), _num(s.best), _num(s.worst),
            _num(s.avg_runtime) if timing else NA, _num(c.mean_evals),
            _num(s.n_success), _num(s.n_failure),
        ])
    return buf.getvalue()


WILCOXON_COLUMNS = ("problem", "reference", "competitor", "p_value", "t_plus", "t_minus", "win")


def render_wilcoxon_csv(report: ExperimentReport) -> str:
    """One row per (problem, competitor) and a closing ``+/=/-`` tally row each."""
    cmp = report.comparison
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(WILCOXON_COLUMNS)
    if cmp is None:
        return buf.getvalue()
    for comp in cmp.competitors:
        for p in cmp.problems:
            r = cmp.results[(p, comp)]
            w.writerow([p, cmp.reference, comp, repr(r.p_value), repr(r.t_plus), repr(r.t_minus), r.symbol])
        wins, ties, losses = cmp.tally(comp)
        w.writerow(["+/=/-", cmp.reference, comp, NA, NA, NA, f"{wins}/{ties}/{losses}"])
    return buf.getvalue()


def render_wilcoxon_markdown(report: ExperimentReport) -> str:
    cmp = report.comparison
    if cmp is None:
        return ""
    lines = [f"## Two-sided Wilcoxon signed-rank test (alpha={report.config.alpha:g})", ""]
    head = ["Problem"]
    for comp in cmp.competitors:
        head += [f"{cmp.reference} vs {comp} p-value", "T+", "T-", "Win"]
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "---|" * len(head))
    for p in cmp.problems:
        row = [p]
        for comp in cmp.competitors:
            r = cmp.results[(p, comp)]
            pv = "<0.0001" if r.p_value < 1e-4 else f"{r.p_value:.4f}"
            row += [pv, f"{r.t_plus:g}", f"{r.t_minus:g}", r.symbol]
        lines.append("| " + " | ".join(row) + " |")
    tally = ["+/=/-"]
    for comp in cmp.competitors:
        w, t, l = cmp.tally(comp)
        tally += ["", "", "", f"{w}/{t}/{l}"]
    lines.append("| " + " | ".join(tally) + " |")
    return "\n".join(lines) + "\n"


def render_markdown(report: ExperimentReport) -> str:
    cfg = report.config
    algos = list(cfg.algorithms)
    problems = cfg.problem_names
    lines = [
        "# Benchmark results",
        "",
        f"runs={cfg.runs}, iterations={cfg.iterations}, population={cfg.population}, "
        f"dimension={cfg.dimension}, lambda={cfg.lam:g}, seed={cfg.base_seed}",
        "",
    ]
    head = ["Problem"]
    for a in algos:
        head += [f"{a} Mean", f"{a} SD"]
    lines.append("| " + " | ".join(head) + " |")
    lines.append("|" + "---|" * len(head))
    for p in problems:
        row = [p]
        for a in algos:
            s = report.cell(a, p).summary
            row += [_short(s and s.mean), _short(s and s.sd)]
        lines.append("| " + " | ".join(row) + " |")
    lines += ["", "## Details", ""]
    detail = ["Algorithm", "Problem", "Best", "Worst", "Avg time (s)", "Evals", "Success", "Failure"]
    lines.append("| " + " | ".join(detail) + " |")
    lines.append("|" + "---|" * len(detail))
    for c in report.cells:
        s = c.summary
        if s is None:
            lines.append(f"| {c.algorithm} | {c.problem} | " + " | ".join([NA] * 6) + " |")
            continue
        t = f"{s.avg_runtime:.4f}" if cfg.timing else NA
        lines.append(
            f"| {c.algorithm} | {c.problem} | {_short(s.best)} | {_short(s.worst)} | {t} | "
            f"{c.mean_evals:g} | {_num(s.n_success)} | {_num(s.n_failure)} |"
        )
    wil = render_wilcoxon_markdown(report)
    if wil:
        lines += ["", wil.rstrip("\n")]
    return "\n".join(lines) + "\n"


def render_trace(trace: ConvergenceTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    rows = zip(
        trace.best_per_iter, trace.per_iter_delta,
        trace.diversity_per_iter, trace.exploration_pct_per_iter,
    )
    for i, (b, d, div, e) in enumerate(rows, start=1):
        w.writerow([i, repr(b), repr(d), repr(div), repr(e)])
    return buf.getvalue()


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def write_trace(trace: ConvergenceTrace, path) -> Path:
    return _write(Path(path), render_trace(trace))


def emit_report(
    report: ExperimentReport,
    path,
    fmt: str = "csv",
    trace_dir: Optional[str] = None,
) -> Path:
    """Write the report as CSV or Markdown; optionally one trace CSV per cell."""
    if fmt == "csv":
        text = render_csv(report)
        if report.comparison is not None:
            wil = Path(path).with_name(Path(path).stem + "_wilcoxon.csv")
            _write(wil, render_wilcoxon_csv(report))
    elif fmt == "markdown":
        text = render_markdown(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    out = _write(Path(path), text)
    if trace_dir is not None:
        for c in report.cells:
            if c.best_trace is not None:
                write_trace(c.best_trace, Path(trace_dir) / f"{c.algorithm}_{c.problem}.csv")
    return out
