from mifdo.harness.config import ConfigError, ExperimentConfig, config_from_mapping, load_config
from mifdo.harness.registry import ALGORITHMS, PROBLEM_NAMES, SUITES, expand, get_problem
from mifdo.harness.report import emit_report, render_csv, render_markdown
from mifdo.harness.runner import ExperimentReport, build_tasks, derive_seed, execute

__all__ = [
    "ALGORITHMS",
    "PROBLEM_NAMES",
    "SUITES",
    "ConfigError",
    "ExperimentConfig",
    "ExperimentReport",
    "build_tasks",
    "config_from_mapping",
    "derive_seed",
    "emit_report",
    "execute",
    "expand",
    "get_problem",
    "load_config",
    "render_csv",
    "render_markdown",
]
