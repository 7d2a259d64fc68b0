"""Name -> problem lookup shared by the CLI and worker processes."""

from __future__ import annotations

from mifdo.engineering import TSP5, aaad_problem, pvd_problem, tsp_problem
from mifdo.problems import CEC_NAMES, CLASSICAL_NAMES, Problem, cec2019_problem, classical_problem
from mifdo.problems.cec2019 import DEFAULT_SHIFT_SEED

ENGINEERING_NAMES = ("aaad", "pvd", "tsp5")
SUITES = {
    "classical": CLASSICAL_NAMES,
    "cec2019": CEC_NAMES,
    "engineering": ENGINEERING_NAMES,
}
PROBLEM_NAMES = CLASSICAL_NAMES + CEC_NAMES + ENGINEERING_NAMES
ALGORITHMS = ("fdo", "mifdo")

# TF1-TF13 accept any dimension; everything else has a fixed size
SCALABLE = frozenset(CLASSICAL_NAMES[:13])


def expand(names) -> list[str]:
    """Expand suite names and validate problem names, keeping order."""
    out: list[str] = []
    for raw in names:
        key = str(raw).lower()
        members = SUITES.get(key, (key,))
        for m in members:
            if m not in PROBLEM_NAMES:
                raise KeyError(
                    f"unknown problem {raw!r}; valid problems: {', '.join(PROBLEM_NAMES)}; "
                    f"suites: {', '.join(SUITES)}"
                )
            if m not in out:
                out.append(m)
    return out


def get_problem(name: str, dim: int | None = None, shift_seed: int = DEFAULT_SHIFT_SEED) -> Problem:
    key = name.lower()
    if key in CLASSICAL_NAMES:
        if dim is not None and key in SCALABLE:
            return classical_problem(key, dim)
        return classical_problem(key)
    if key in CEC_NAMES:
        return cec2019_problem(key, shift_seed)
    if key == "aaad":
        return aaad_problem()
    if key == "pvd":
        return pvd_problem()
    if key == "tsp5":
        return tsp_problem(TSP5, "tsp5")
    raise KeyError(f"unknown problem {name!r}; valid problems: {', '.join(PROBLEM_NAMES)}")
