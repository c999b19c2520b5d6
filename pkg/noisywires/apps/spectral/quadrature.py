"""Adaptive quadrature over the positive frequency axis.

The integrands of the force coefficient and the free energy have structure at a
handful of characteristic frequencies (ω_R, ω_T, ω_C and the normal-mode band
edges ω_C/√(1±m)). With capacitance and small ω_R the band edges turn into
resonances of width ~ω_R, so the axis is split there first; each panel is then
integrated with QUADPACK (``scipy.integrate.quad``) and the region beyond
ω_max = 50·max(ω_T, ω_R, ω_C) with the mapped semi-infinite rule.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, List

import numpy as np
from django.conf import settings
from scipy.integrate import IntegrationWarning, quad

from noisywires.apps.circuit.params import ReducedParams, ThermoResult
from noisywires.apps.circuit.response import resonance_frequencies
from noisywires.apps.core.exceptions import ConvergenceError, ErrorDetail
from noisywires.apps.core.validators import NumberValidator

logger = logging.getLogger(__name__)

TAIL_FACTOR = 50.0
RESONANCE_WINDOWS = (1.0, 10.0, 100.0, 1000.0)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for every spectral integral; read-only once built."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_subdivisions: int = 10_000
    debug_assertions: bool = False

    def __post_init__(self):
        result = NumberValidator.positive("rel_tol", self.rel_tol)
        result.merge(NumberValidator.positive("abs_tol", self.abs_tol))
        result.merge(NumberValidator.at_least("max_subdivisions", self.max_subdivisions, 100))
        result.raise_if_invalid()

    @classmethod
    def from_settings(cls) -> "QuadratureConfig":
        conf = settings.NOISYWIRES["QUADRATURE"]
        return cls(
            rel_tol=conf["REL_TOL"],
            abs_tol=conf["ABS_TOL"],
            max_subdivisions=conf["MAX_SUBDIVISIONS"],
            debug_assertions=settings.NOISYWIRES["DEBUG_ASSERTIONS"],
        )

    def tightened(self, factor: float) -> "QuadratureConfig":
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)


def characteristic_points(p: ReducedParams, classical: bool = False) -> List[float]:
    """ω_R, ω_T and, with capacitance, ω_C/√(1+m), ω_C, ω_C/√(1−m)."""
    points = [p.omega_r]
    if not classical:
        points.append(p.t)
    bands = resonance_frequencies(p)
    if bands is not None:
        points.extend([bands[0], p.omega_c, bands[1]])
    return sorted(x for x in points if x > 0 and math.isfinite(x))


def breakpoints(p: ReducedParams, classical: bool = False) -> np.ndarray:
    """Panel edges on (0, ω_max]: characteristic points, resonance windows and decades."""
    points = characteristic_points(p, classical)
    omega_max = TAIL_FACTOR * points[-1]
    edges = set(points)

    bands = resonance_frequencies(p)
    if bands is not None and p.omega_r > 0:
        half_width = 0.5 * p.omega_r
        for center in (bands[0], p.omega_c, bands[1]):
            for k in RESONANCE_WINDOWS:
                offset = k * half_width
                if offset < 0.1 * center:
                    edges.update((center - offset, center + offset))

    lo = points[0] * 1e-3
    for exponent in range(math.floor(math.log10(lo)), math.ceil(math.log10(omega_max)) + 1):
        edges.add(10.0 ** exponent)

    grid = np.array(sorted(x for x in edges if lo <= x < omega_max))
    return np.concatenate(([0.0], grid, [omega_max]))


def _quad_panel(func, a, b, q: QuadratureConfig, epsabs: float):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = quad(func, a, b, epsabs=epsabs, epsrel=q.rel_tol, limit=q.max_subdivisions)
    exhausted = False
    for warning in caught:
        text = str(warning.message)
        if "subdivisions" in text:
            exhausted = True
        else:
            logger.debug("quad on [%g, %g]: %s", a, b, text.splitlines()[0])
    return value, error, exhausted


def _integrate_once(func, edges: np.ndarray, q: QuadratureConfig, epsabs: float):
    total = 0.0
    total_error = 0.0
    failed = []
    for a, b in zip(edges[:-1], edges[1:]):
        value, error, exhausted = _quad_panel(func, float(a), float(b), q, epsabs)
        total += value
        total_error += error
        if exhausted:
            failed.append((float(a), float(b), error))
    value, error, exhausted = _quad_panel(func, float(edges[-1]), math.inf, q, epsabs)
    total += value
    total_error += error
    if exhausted:
        failed.append((float(edges[-1]), math.inf, error))
    return total, total_error, failed


def integrate(
    func: Callable[[float], float],
    p: ReducedParams,
    q: QuadratureConfig,
    classical: bool = False,
) -> ThermoResult:
    """∫₀^∞ func(ω) dω, split at the panel edges of :func:`breakpoints`.

    Results far below ``abs_tol`` are recomputed on a rescaled integrand so that
    ``rel_tol`` governs them as well (the low-temperature free energy reaches 1e-19).
    """
    edges = breakpoints(p, classical)
    logger.debug("integrating over %d panels up to %g", len(edges) - 1, edges[-1])
    total, total_error, failed = _integrate_once(func, edges, q, q.abs_tol)

    scale = abs(total)
    if 0 < scale and q.rel_tol * scale < q.abs_tol:
        scaled_total, scaled_error, failed = _integrate_once(lambda w: func(w) / scale, edges, q, q.abs_tol)
        total, total_error = scaled_total * scale, scaled_error * scale

    if failed and total_error > max(q.abs_tol, q.rel_tol * abs(total)):
        raise ConvergenceError(
            f"quadrature did not converge on {len(failed)} panel(s) within "
            f"{q.max_subdivisions} subdivisions",
            partial_value=total,
            abs_error_estimate=total_error,
            details=[
                ErrorDetail(message=f"panel [{a:.6g}, {b:.6g}] error {err:.3g}", code="panel",
                            context={"a": a, "b": b, "error": err})
                for a, b, err in failed
            ],
        )
    return ThermoResult(total, total_error)
