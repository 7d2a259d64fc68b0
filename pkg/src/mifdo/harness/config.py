"""Experiment configuration: JSON files with flat keys mirroring the CLI flags."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional

from mifdo.harness.registry import ALGORITHMS, expand
from mifdo.problems.cec2019 import DEFAULT_SHIFT_SEED

FORMATS = ("csv", "markdown")


class ConfigError(ValueError):
    """Invalid configuration value; ``key`` names the offending setting."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class ExperimentConfig:
    algorithms: tuple[str, ...] = ("mifdo",)
    problems: tuple[str, ...] = ("classical",)
    runs: int = 30
    iterations: int = 500
    dim: Optional[int] = None
    population: int = 30
    lam: float = 0.1
    lambda_mode: str = "pace"
    base_seed: int = 0
    shift_seed: int = DEFAULT_SHIFT_SEED
    alpha: float = 0.05
    success_tol: float = 1e-2
    out: Optional[str] = None
    format: str = "csv"
    jobs: int = 1
    timing: bool = True
    trace_dir: Optional[str] = None

    @property
    def dimension(self) -> int:
        return 10 if self.dim is None else self.dim

    @property
    def problem_names(self) -> list[str]:
        return expand(self.problems)

    def validate(self) -> "ExperimentConfig":
        for key in ("runs", "iterations", "population", "jobs"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(key, f"must be a positive integer, got {value!r}")
        if self.dim is not None and (not isinstance(self.dim, int) or self.dim < 1):
            raise ConfigError("dim", f"must be a positive integer, got {self.dim!r}")
        if not self.algorithms:
            raise ConfigError("algo", "at least one algorithm is required")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ConfigError("algo", f"unknown algorithm {a!r}; valid: {', '.join(ALGORITHMS)}")
        if not self.problems:
            raise ConfigError("problem", "at least one problem or suite is required")
        try:
            expand(self.problems)
        except KeyError as exc:
            raise ConfigError("problem", exc.args[0]) from None
        if not math.isfinite(self.lam):
            raise ConfigError("lambda", "must be finite")
        if self.lambda_mode not in ("pace", "constant"):
            raise ConfigError("lambda_mode", f"must be 'pace' or 'constant', got {self.lambda_mode!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError("alpha", f"must lie in (0, 1), got {self.alpha!r}")
        if self.format not in FORMATS:
            raise ConfigError("format", f"must be one of {', '.join(FORMATS)}, got {self.format!r}")
        return self


# flat config key -> (dataclass field, converter)
def _names(value) -> tuple[str, ...]:
    if isinstance(value, str):
        return tuple(v.strip().lower() for v in value.split(",") if v.strip())
    return tuple(str(v).lower() for v in value)


_KEYS: dict[str, tuple[str, Any]] = {
    "algo": ("algorithms", _names),
    "problem": ("problems", _names),
    "suite": ("problems", _names),
    "runs": ("runs", None),
    "iters": ("iterations", None),
    "dim": ("dim", None),
    "pop": ("population", None),
    "lambda": ("lam", float),
    "lambda_mode": ("lambda_mode", str),
    "seed": ("base_seed", None),
    "shift_seed": ("shift_seed", None),
    "alpha": ("alpha", float),
    "success_tol": ("success_tol", float),
    "out": ("out", str),
    "format": ("format", str),
    "jobs": ("jobs", None),
    "timing": ("timing", bool),
    "trace_dir": ("trace_dir", str),
}


def config_from_mapping(data: Mapping[str, Any], base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Overlay flat ``data`` onto ``base`` (defaults) and validate."""
    cfg = base or ExperimentConfig()
    updates: dict[str, Any] = {}
    problems: list[str] = []
    for key, value in data.items():
        if key not in _KEYS:
            raise ConfigError(key, f"unknown setting; valid keys: {', '.join(_KEYS)}")
        if value is None:
            continue
        name, conv = _KEYS[key]
        try:
            value = conv(value) if conv else value
        except (TypeError, ValueError):
            raise ConfigError(key, f"invalid value {value!r}") from None
        if name == "problems":
            problems.extend(value)
        else:
            updates[name] = value
    if problems:
        updates["problems"] = tuple(problems)
    return replace(cfg, **updates).validate()


def load_config(path) -> ExperimentConfig:
    """Read a JSON config; an empty file yields the defaults."""
    text = Path(path).read_text()
    if not text.strip():
        return ExperimentConfig().validate()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ConfigError("config", f"{path}: top level must be an object")
    return config_from_mapping(data)
