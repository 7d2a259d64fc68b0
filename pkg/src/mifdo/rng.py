"""Seeded random sources and the Levy-flight step generator.

Every run owns exactly one :class:`RandomSource`.  Sources are backed by
numpy's PCG64 bit generator, whose output stream is specified bit-for-bit
and therefore identical across platforms.  Independent streams for the
same seed are derived through ``SeedSequence`` spawn keys, so two sources
built from ``(seed, 0)`` and ``(seed, 1)`` never share state.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["LevyWalkParams", "RandomSource", "levy_r", "uniform"]

_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class LevyWalkParams:
    """Parameters of the Mantegna Levy walk that produces ``r``.

    Attributes:
        beta: Stability exponent, in (0, 2].
        scale: Multiplier applied to the raw Mantegna step before clipping.
    """

    beta: float = 1.5
    scale: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.beta <= 2.0:
            raise ValueError(f"beta must lie in (0, 2], got {self.beta}")
        if not (math.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError(f"scale must be positive and finite, got {self.scale}")

    @property
    def sigma_u(self) -> float:
        return _mantegna_sigma(self.beta)


@functools.lru_cache(maxsize=None)
def _mantegna_sigma(b: float) -> float:
    num = math.gamma(1.0 + b) * math.sin(math.pi * b / 2.0)
    den = math.gamma((1.0 + b) / 2.0) * b * 2.0 ** ((b - 1.0) / 2.0)
    return (num / den) ** (1.0 / b)


class RandomSource:
    """Deterministic single-owner random stream.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed. Larger or negative integers are reduced
        modulo 2**64.
    stream : int, optional
        Stream index. Sources with the same seed but different stream
        indices are statistically independent.
    """

    def __init__(self, seed: int, stream: int = 0):
        if stream < 0:
            raise ValueError(f"stream index must be non-negative, got {stream}")
        self.seed = int(seed) & _SEED_MASK
        self.stream = int(stream)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, stream={self.stream})"

    def uniform(self, lo: float, hi: float) -> float:
        return uniform(self, lo, hi)

    def uniform_vector(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Draw one point uniformly from the box ``[lo, hi]``."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")
        u = self.generator.random(lo.shape)
        return np.minimum(lo + u * (hi - lo), hi)

    def levy(self, params: LevyWalkParams | None = None) -> float:
        return levy_r(self, params or _DEFAULT_LEVY)

    def normal(self, size=None) -> np.ndarray | float:
        return self.generator.standard_normal(size)

    def random(self, size=None) -> np.ndarray | float:
        return self.generator.random(size)


_DEFAULT_LEVY = LevyWalkParams()


def uniform(source: RandomSource, lo: float, hi: float) -> float:
    """Return one sample from the closed interval ``[lo, hi]``.

    Raises:
        ValueError: if ``lo > hi``.
    """
    if lo > hi:
        raise ValueError(f"inverted interval [{lo}, {hi}]")
    if lo == hi:
        return float(lo)
    value = lo + source.generator.random() * (hi - lo)
    # rounding in lo + u*(hi-lo) can land a hair outside the interval
    return float(min(max(value, lo), hi))


def levy_r(source: RandomSource, params: LevyWalkParams = _DEFAULT_LEVY) -> float:
    """Draw one Levy-flight step mapped into ``[-1, 1]``.

    Mantegna's ratio ``u / |v|**(1/beta)`` with ``u ~ N(0, sigma_u**2)`` and
    ``v ~ N(0, 1)``, multiplied by ``params.scale`` and hard-clipped.
    """
    u, v = source.generator.standard_normal(2)
    u *= params.sigma_u
    av = abs(v)
    if av == 0.0:
        step = math.copysign(math.inf, u) if u != 0.0 else 0.0
    else:
        step = u / av ** (1.0 / params.beta)
    return float(min(1.0, max(-1.0, params.scale * step)))
