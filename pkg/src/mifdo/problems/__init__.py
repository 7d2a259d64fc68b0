from mifdo.problems.base import (
    DEFAULT_PENALTY,
    ConstraintReport,
    Problem,
    brute_force_min,
    constraint_report,
    evaluate,
    manifest_table,
    penalized_fitness,
    repair,
)
from mifdo.problems.cec2019 import CEC_NAMES, cec2019_problem, cec2019_suite
from mifdo.problems.classical import CLASSICAL_NAMES, classical_problem, classical_suite
from mifdo.problems.composite import CompositeFunction, CompositeSpec

__all__ = [
    "CEC_NAMES",
    "CLASSICAL_NAMES",
    "CompositeFunction",
    "CompositeSpec",
    "ConstraintReport",
    "DEFAULT_PENALTY",
    "Problem",
    "brute_force_min",
    "cec2019_problem",
    "cec2019_suite",
    "classical_problem",
    "classical_suite",
    "constraint_report",
    "evaluate",
    "manifest_table",
    "penalized_fitness",
    "repair",
]
