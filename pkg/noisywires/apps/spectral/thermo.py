"""Force coefficient, interaction free energy and their integrands.

H = (1/π) ∫₀^∞ dω ω E(ω/t) Im[D(ω)]⁻¹
F = (t/π) ∫₀^∞ (dω/ω) E(ω/t) Im log[1 + (ωm/u)²],   u = Z/L

Free energies are in units of ħω_ref, H is dimensionless, forces from
:func:`force_reduced` are in units of k_BT per unit length of ``a``.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

from noisywires.apps.circuit.params import ReducedParams, ThermoResult
from noisywires.apps.circuit.response import (
    reduced_impedance,
    response_denominator,
    thermal_weight,
)
from noisywires.apps.core.exceptions import NumericalException, ValidationException
from noisywires.apps.core.validators import NumberValidator

from .differentiation import derivative
from .quadrature import QuadratureConfig, integrate

logger = logging.getLogger(__name__)

H_INTEGRAND = "h-integrand"
FREE_ENERGY_INTEGRAND = "free-energy-integrand"
DENSITIES = (H_INTEGRAND, FREE_ENERGY_INTEGRAND)

_ZERO = ThermoResult(0.0, 0.0)


def _config(q: Optional[QuadratureConfig]) -> QuadratureConfig:
    return q if q is not None else QuadratureConfig.from_settings()


def _h_integrand(omega: float, p: ReducedParams, classical: bool) -> float:
    weight = thermal_weight(omega, p.t, classical)
    if weight == 0.0:
        return 0.0
    d = response_denominator(omega, p)
    im_inverse = -d.imag / (d.real * d.real + d.imag * d.imag)
    return omega * weight * im_inverse / math.pi


def _log_phase(omega: float, p: ReducedParams, debug: bool) -> float:
    u = reduced_impedance(omega, p)
    z = 1.0 + (omega * p.m / u) ** 2
    phase = math.atan2(z.imag, z.real)
    if debug and p.omega_c is None and not 0.0 <= phase < math.pi:
        raise NumericalException(
            f"Im log left [0, π) at omega={omega!r}: {phase!r}", code="log_branch"
        )
    return phase


def _free_energy_integrand(omega: float, p: ReducedParams, classical: bool, debug: bool = False) -> float:
    weight = thermal_weight(omega, p.t, classical)
    if weight == 0.0:
        return 0.0
    return p.t * weight * _log_phase(omega, p, debug) / (math.pi * omega)


def spectral_density(
    omega: float,
    p: ReducedParams,
    which: str = H_INTEGRAND,
    classical: bool = False,
) -> float:
    """Pointwise integrand of :func:`h_factor` or :func:`interaction_free_energy`.

    Prefactors are included, so ∫₀^∞ spectral_density dω is the quantity itself.
    """
    if which not in DENSITIES:
        raise ValidationException(f"which must be one of {DENSITIES}, got {which!r}", code="density_kind")
    if not omega > 0 or not math.isfinite(omega):
        raise ValidationException(f"omega must be finite and > 0, got {omega!r}")
    if p.omega_r == 0:
        return 0.0
    if which == H_INTEGRAND:
        return _h_integrand(omega, p, classical)
    return _free_energy_integrand(omega, p, classical)


def h_factor(
    p: ReducedParams,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
) -> ThermoResult:
    """Dimensionless force coefficient H, with F₁₂ = −k_BT·H·∇(m²)."""
    if p.omega_r == 0 or (p.t == 0 and not classical):
        return _ZERO
    q = _config(q)
    return integrate(lambda w: _h_integrand(w, p, classical), p, q, classical)


def force_reduced(
    p: ReducedParams,
    dm2_da: float,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
) -> ThermoResult:
    """Force component −H·∂(m²)/∂a in units of k_BT (per unit of the displacement a)."""
    NumberValidator.finite("dm2_da", dm2_da).raise_if_invalid()
    if dm2_da == 0:
        return _ZERO
    return h_factor(p, q, classical).scaled(-dm2_da)


def interaction_free_energy(
    p: ReducedParams,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
) -> ThermoResult:
    """Interaction free energy in units of ħω_ref.

    ω_R = 0 is the dissipationless pair, where the noise source is absent and the
    value is 0; the limit ω_R → 0⁺ with capacitance is :func:`lossless_free_energy`.
    """
    if p.m == 0 or p.omega_r == 0 or p.t == 0:
        return _ZERO
    q = _config(q)
    debug = q.debug_assertions
    return integrate(lambda w: _free_energy_integrand(w, p, classical, debug), p, q, classical)


def free_energy_gradient(
    p: ReducedParams,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
    step: float = 1e-2,
) -> ThermoResult:
    """∂F/∂(m²) by central differences in m²; equals t·H."""
    m2 = p.m2
    h = min(step, m2 / 4.0, (1.0 - m2) / 4.0)
    if h < 1e-6:
        raise ValidationException(
            f"m² = {m2!r} is too close to 0 or 1 for a central difference in m²", code="gradient_step"
        )

    def free_energy_at(z: float) -> ThermoResult:
        return interaction_free_energy(p.replace(m=math.sqrt(z)), q, classical)

    return derivative(free_energy_at, m2, h)
