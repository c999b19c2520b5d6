"""The ω_R → 0⁺ limit of the capacitive model.

With capacitance and vanishing resistance the spectral weight of H and F
collapses onto the two normal modes ω± = ω_C/√(1∓m) of the coupled LC pair.
What remains is the thermal free energy of those modes relative to two
uncoupled oscillators at ω_C: finite at t > 0, exponentially small in ω−/t, and
free of the classical 1/(2(1−m²)) anomaly.
"""

from __future__ import annotations

import math

from noisywires.apps.circuit.response import bose_factor
from noisywires.apps.core.validators import CouplingValidator, NumberValidator

from .entropy import self_free_energy

# Below this |m| the two-mode difference quotient is replaced by its limit.
_SMALL_M = 1e-4


def _validate(t: float, m: float, omega_c: float) -> None:
    result = NumberValidator.nonnegative("t", t)
    result.merge(NumberValidator.positive("omega_c", omega_c))
    result.merge(CouplingValidator.validate_m(m))
    result.raise_if_invalid()


def normal_modes(m: float, omega_c: float = 1.0):
    am = abs(m)
    return omega_c / math.sqrt(1.0 + am), omega_c / math.sqrt(1.0 - am)


def lossless_free_energy(t: float, m: float, omega_c: float = 1.0) -> float:
    """t Σ± ln(1 − e^{−ω±/t}) − 2t ln(1 − e^{−ω_C/t}), units ħω_ref."""
    _validate(t, m, omega_c)
    if t == 0 or m == 0:
        return 0.0
    lower, upper = normal_modes(m, omega_c)
    return (
        self_free_energy(t, lower)
        + self_free_energy(t, upper)
        - 2.0 * self_free_energy(t, omega_c)
    )


def _weight(omega: float, t: float) -> float:
    return bose_factor(omega / t)


def _weight_slope(y: float) -> float:
    """dE/dy."""
    if y == 0:
        return -0.5
    e = bose_factor(y)
    return e * (1.0 / y - 1.0 / -math.expm1(-y))


def lossless_h_factor(t: float, m: float, omega_c: float = 1.0) -> float:
    """E(ω₊/t)/(4m(1−m)) − E(ω₋/t)/(4m(1+m)), so that ∂F/∂(m²) = t·H."""
    _validate(t, m, omega_c)
    if t == 0:
        return 0.0
    am = abs(m)
    if am < _SMALL_M:
        y = omega_c / t
        return 0.5 * (bose_factor(y) + 0.5 * y * _weight_slope(y))
    lower, upper = normal_modes(m, omega_c)
    return (
        _weight(upper, t) / (4.0 * am * (1.0 - am))
        - _weight(lower, t) / (4.0 * am * (1.0 + am))
    )
