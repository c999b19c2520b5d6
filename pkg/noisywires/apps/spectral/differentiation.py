"""Finite differences of quadrature-valued functions."""

from __future__ import annotations

import math
from typing import Callable, Dict, Sequence

from noisywires.apps.circuit.params import ThermoResult
from noisywires.apps.core.exceptions import ConvergenceError

STENCIL_ORDER = 4
_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_WEIGHTS = (1.0, -8.0, 8.0, -1.0)


def richardson_extrapolate(base_values: Sequence[float], p: int, r: float = 2.0) -> float:
    """Eliminate successive error orders p, 2p, ... from values at steps h, h/r, h/r², ..."""
    if len(base_values) < 2:
        raise ValueError("richardson_extrapolate requires at least two base values.")
    vals = [float(v) for v in base_values]
    for j in range(1, len(vals)):
        factor = r ** (p * j)
        for k in range(len(vals) - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    return vals[-1]


def derivative(fn: Callable[[float], ThermoResult], x: float, h: float) -> ThermoResult:
    """df/dx from the five-point stencil at h and h/2, combined by one Richardson step.

    The error bound is the Richardson difference plus the quadrature errors of the
    six evaluations carried through the stencil weights.
    """
    cache: Dict[float, ThermoResult] = {}

    def at(point: float) -> ThermoResult:
        if point not in cache:
            cache[point] = fn(point)
        return cache[point]

    def stencil(step: float):
        samples = [at(x + k * step) for k in _OFFSETS]
        value = sum(w * s.value for w, s in zip(_WEIGHTS, samples)) / (12.0 * step)
        error = sum(abs(w) * s.abs_error_estimate for w, s in zip(_WEIGHTS, samples)) / (12.0 * step)
        return value, error

    coarse, coarse_error = stencil(h)
    fine, fine_error = stencil(0.5 * h)
    factor = 2.0 ** STENCIL_ORDER
    value = richardson_extrapolate([coarse, fine], p=STENCIL_ORDER)
    truncation = abs(fine - coarse) / (factor - 1.0)
    propagated = (factor * fine_error + coarse_error) / (factor - 1.0)
    error = truncation + propagated
    if not (math.isfinite(value) and math.isfinite(error)):
        raise ConvergenceError("finite difference produced a non-finite result", partial_value=value)
    return ThermoResult(value, error)
