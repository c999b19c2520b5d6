"""Closed-form limits used as oracles for the spectral integrals.

Classical regime (ω_R ≪ ω_T, E ≡ 1): equipartition gives
⟨i₁i₂⟩ = −k_BT·M/(L² − M²), hence H = f(m²) = 1/(2(1 − m²)); integrating
∂F/∂(m²) = k_BT·f over m² gives F = k_BT·g(m²), g = −½ln(1 − m²).
"""

import math

from noisywires.apps.core.exceptions import CouplingBoundError
from noisywires.apps.core.validators import CouplingValidator

LOW_T_COEFFICIENT = 16.0 * math.pi ** 5 / 63.0


def _check(m: float) -> float:
    CouplingValidator.validate_m(m).raise_if_invalid(CouplingBoundError)
    return m * m


def h_classical(m: float) -> float:
    return 1.0 / (2.0 * (1.0 - _check(m)))


def g_classical(m: float) -> float:
    return -0.5 * math.log1p(-_check(m))


def nernst_entropy_limit(m: float) -> float:
    """Entropy −g(m²) reached without capacitance as ω_R/ω_T → 0, units k_B; nonzero, so S does not vanish."""
    return -g_classical(m)


def low_t_capacitive_free_energy(t: float, m: float, omega_r: float) -> float:
    """−(16π⁵/63)·m²·t⁶·ω_R in units ħω_C, valid for ω_R ≪ t ≪ 1."""
    return -LOW_T_COEFFICIENT * m * m * t ** 6 * omega_r


def low_t_capacitive_entropy(t: float, m: float, omega_r: float) -> float:
    """−∂/∂t of the t⁶ law at fixed ω_R."""
    return 6.0 * LOW_T_COEFFICIENT * m * m * t ** 5 * omega_r
