"""Command-line entry point: ``mifdo {run,bench,compare,list}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from mifdo.core import OptimizerConfig, run
from mifdo.harness.config import ConfigError, ExperimentConfig, config_from_mapping, load_config
from mifdo.harness.registry import ALGORITHMS, PROBLEM_NAMES, SUITES, get_problem
from mifdo.harness.report import emit_report, render_wilcoxon_markdown, write_trace
from mifdo.harness.runner import execute
from mifdo.problems import manifest_table
from mifdo.rng import RandomSource

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, help="dimension of scalable problems (default 10)")
    p.add_argument("--pop", type=int, help="scout bees (default 30)")
    p.add_argument("--iters", type=int, help="iterations per run (default 500)")
    p.add_argument("--seed", type=int, help="base seed (default 0)")
    p.add_argument("--lambda", dest="lam", type=float, help="Lambda (default 0.1)")
    p.add_argument("--lambda-mode", choices=("pace", "constant"), help="how Lambda enters the move")
    p.add_argument("--out", help="output path")


def _experiment(p: argparse.ArgumentParser) -> None:
    _common(p)
    p.add_argument("--algo", help="comma-separated algorithms: fdo, mifdo")
    p.add_argument("--problem", help="comma-separated problem names")
    p.add_argument("--suite", help="comma-separated suites: " + ", ".join(SUITES))
    p.add_argument("--runs", type=int, help="independent runs per cell (default 30)")
    p.add_argument("--alpha", type=float, help="Wilcoxon significance level (default 0.05)")
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--format", choices=("csv", "markdown"), help="report format (default csv)")
    p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields from reports")
    p.add_argument("--trace-dir", help="write the best run's trace for every cell here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mifdo", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single optimization run; prints the best and writes a trace")
    _common(p)
    p.add_argument("--algo", default="mifdo", choices=ALGORITHMS)
    p.add_argument("--problem", required=True)

    _experiment(sub.add_parser("bench", help="run a suite and write a report"))
    _experiment(sub.add_parser("compare", help="compare algorithms with the Wilcoxon test"))
    sub.add_parser("list", help="list problems and algorithms")
    return parser


def _overrides(args) -> dict:
    keys = {
        "algo": args.algo, "problem": args.problem, "suite": args.suite, "dim": args.dim,
        "pop": args.pop, "iters": args.iters, "runs": args.runs, "seed": args.seed,
        "lambda": args.lam, "lambda_mode": args.lambda_mode, "alpha": args.alpha,
        "out": args.out, "format": args.format, "jobs": args.jobs,
        "trace_dir": args.trace_dir,
    }
    if args.no_timing:
        keys["timing"] = False
    return {k: v for k, v in keys.items() if v is not None}


def _experiment_config(args) -> ExperimentConfig:
    base = load_config(args.config) if args.config else ExperimentConfig()
    return config_from_mapping(_overrides(args), base)


def cmd_run(args) -> int:
    try:
        problem = get_problem(args.problem, args.dim)
    except KeyError as exc:
        raise ConfigError("problem", exc.args[0]) from None
    kwargs = {"variant": args.algo}
    for flag, name in (("pop", "population"), ("iters", "max_iterations"), ("lam", "lam"),
                       ("seed", "seed"), ("lambda_mode", "lambda_mode")):
        if getattr(args, flag) is not None:
            kwargs[name] = getattr(args, flag)
    try:
        cfg = OptimizerConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError("run", str(exc)) from None
    res = run(problem, cfg, source=RandomSource(cfg.seed))
    out = Path(args.out or f"trace_{args.algo}_{problem.name}.csv")
    write_trace(res.trace, out)
    with np.printoptions(precision=6, suppress=False):
        print(f"algorithm:   {cfg.variant.value}")
        print(f"problem:     {problem.name} (d={problem.dimension})")
        print(f"population:  {cfg.population}  iterations: {res.iterations}/{cfg.max_iterations}")
        print(f"best:        {res.best_fitness!r}")
        print(f"position:    {res.best_position}")
        print(f"evaluations: {res.eval_count}")
        print(f"wall time:   {res.wall_time:.3f} s")
        print(f"trace:       {out}")
    return EXIT_OK


def cmd_bench(args, compare: bool = False) -> int:
    cfg = _experiment_config(args)
    if compare and len(cfg.algorithms) < 2:
        raise ConfigError("algo", "compare needs at least two algorithms, e.g. --algo fdo,mifdo")
    report = execute(cfg)
    default = "report.md" if cfg.format == "markdown" else "report.csv"
    out = emit_report(report, cfg.out or default, cfg.format, cfg.trace_dir)
    failed = sum(len(c.errors) for c in report.cells)
    print(f"wrote {out} ({len(report.cells)} rows)")
    if compare and report.comparison is not None:
        print(render_wilcoxon_markdown(report), end="")
    if failed:
        print(f"warning: {failed} run(s) failed; see NA cells", file=sys.stderr)
    return EXIT_OK


def cmd_list(args) -> int:
    print("algorithms: " + ", ".join(ALGORITHMS))
    for suite, names in SUITES.items():
        print(f"suite {suite}: " + ", ".join(names))
    print()
    print(manifest_table([get_problem(n) for n in PROBLEM_NAMES]), end="")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "bench":
            return cmd_bench(args)
        if args.command == "compare":
            return cmd_bench(args, compare=True)
        return cmd_list(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, RuntimeError, ValueError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
