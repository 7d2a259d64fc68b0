"""Weighted composition of shifted basic functions.

Each component ``i`` contributes ``C * f_i((x - o_i) / lam_i) / |f_max_i| + bias_i``
where ``f_max_i = f_i(5 / lam_i)`` normalizes components to a common scale.
Components are blended with Gaussian weights on the distance to each shift;
all non-maximal weights are damped by ``1 - w_max**10`` so that at ``o_i``
the composition equals that component's bias exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

NORMALIZER = 2000.0


@dataclass(frozen=True)
class Component:
    func: Callable[[np.ndarray], float]
    shift: np.ndarray
    sigma: float = 1.0
    stretch: float = 1.0


@dataclass(frozen=True)
class CompositeSpec:
    components: tuple[Component, ...]
    biases: tuple[float, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise ValueError("composite needs at least one component")
        if len(self.biases) != len(self.components):
            raise ValueError("one bias per component required")
        if any(c.sigma <= 0 for c in self.components):
            raise ValueError("component sigma must be positive")
        dims = {np.asarray(c.shift).size for c in self.components}
        if len(dims) != 1:
            raise ValueError("component shifts differ in length")


class CompositeFunction:
    """Callable evaluating a :class:`CompositeSpec`."""

    def __init__(self, spec: CompositeSpec):
        self.spec = spec
        self.shifts = np.array([np.asarray(c.shift, dtype=float) for c in spec.components])
        self.sigmas = np.array([c.sigma for c in spec.components], dtype=float)
        self.stretch = np.array([c.stretch for c in spec.components], dtype=float)
        self.biases = np.array(spec.biases, dtype=float)
        d = self.shifts.shape[1]
        self.fmax = np.array(
            [abs(c.func(np.full(d, 5.0 / c.stretch))) for c in spec.components]
        )

    @property
    def dimension(self) -> int:
        return self.shifts.shape[1]

    def weights(self, x: np.ndarray) -> np.ndarray:
        d = self.dimension
        dist2 = np.sum((x[None, :] - self.shifts) ** 2, axis=1)
        w = np.exp(-dist2 / (2.0 * d * self.sigmas**2))
        imax = int(np.argmax(w))
        wmax = w[imax]
        damp = np.full_like(w, 1.0 - wmax**10)
        damp[imax] = 1.0
        w = w * damp
        s = w.sum()
        if s == 0.0:
            return np.full_like(w, 1.0 / w.size)
        return w / s

    def __call__(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        w = self.weights(x)
        values = np.empty(len(self.spec.components))
        for i, comp in enumerate(self.spec.components):
            z = (x - self.shifts[i]) / self.stretch[i]
            values[i] = NORMALIZER * comp.func(z) / self.fmax[i] + self.biases[i]
        return float(np.dot(w, values))


def make_composite(
    funcs: Sequence[Callable],
    shifts: np.ndarray,
    sigmas: Sequence[float],
    stretches: Sequence[float],
    biases: Sequence[float],
) -> CompositeFunction:
    comps = tuple(
        Component(f, np.asarray(o, dtype=float), float(s), float(l))
        for f, o, s, l in zip(funcs, shifts, sigmas, stretches)
    )
    return CompositeFunction(CompositeSpec(comps, tuple(float(b) for b in biases)))
