"""Thermal occupation factor and the complex circuit response.

Frequencies are reduced (units of ω_ref). With capacitance the reduced impedance
Z/L = ω_R − iω + iω_C²/ω replaces ω_R − iω everywhere.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

from noisywires.apps.core.exceptions import ValidationException

from .params import ReducedParams

# Below this argument the Taylor branch is used; both branches agree to 1e-12 there.
_SERIES_SWITCH = 1e-4
_EXP_LIMIT = 700.0


def bose_factor(y: float) -> float:
    """E(y) = y/(eʸ − 1), with E(0) = 1.

    Positive for every y whose value is representable; past y ≈ 745 the result
    underflows to 0.0.
    """
    if not math.isfinite(y) or y < 0:
        raise ValidationException(f"bose_factor requires finite y >= 0, got {y!r}")
    if y < _SERIES_SWITCH:
        y2 = y * y
        return 1.0 - 0.5 * y + y2 / 12.0 - y2 * y2 / 720.0
    if y > _EXP_LIMIT:
        return y * math.exp(-y)
    return y / math.expm1(y)


def thermal_weight(omega: float, t: float, classical: bool = False) -> float:
    """E(ω/t); the classical value 1 when ``classical`` is set; 0 at t = 0."""
    if classical:
        return 1.0
    if t == 0:
        return 0.0
    return bose_factor(omega / t)


def reduced_impedance(omega: float, p: ReducedParams) -> complex:
    """Z/L in reduced units: ω_R − iω (+ iω_C²/ω with capacitance)."""
    if not omega > 0 or not math.isfinite(omega):
        raise ValidationException(f"omega must be finite and > 0, got {omega!r}")
    u = complex(p.omega_r, -omega)
    if p.omega_c is not None:
        u += 1j * p.omega_c * p.omega_c / omega
    return u


def response_denominator(omega: float, p: ReducedParams) -> complex:
    """D(ω) = (Z/L)² + ω²m²."""
    u = reduced_impedance(omega, p)
    return u * u + (omega * p.m) ** 2


def resonance_frequencies(p: ReducedParams) -> Optional[Tuple[float, float]]:
    """Lossless normal-mode frequencies ω_C/√(1+|m|) and ω_C/√(1−|m|); None without C."""
    if p.omega_c is None:
        return None
    am = abs(p.m)
    return p.omega_c / math.sqrt(1.0 + am), p.omega_c / math.sqrt(1.0 - am)
