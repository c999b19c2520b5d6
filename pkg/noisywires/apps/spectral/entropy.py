"""Self free energy of a single wire oscillator and entropies S = −∂F/∂T."""

from __future__ import annotations

import logging
import math
from typing import Optional

from noisywires.apps.circuit.params import ReducedParams, ThermoResult
from noisywires.apps.circuit.response import bose_factor
from noisywires.apps.core.exceptions import ValidationException
from noisywires.apps.core.validators import NumberValidator

from .differentiation import derivative
from .quadrature import QuadratureConfig
from .resistance import ResistanceModel
from .thermo import interaction_free_energy

logger = logging.getLogger(__name__)

MIN_STEP = 1e-6
RELATIVE_STEP = 1e-3
# Step error is inflated by this factor when the stencil has to be squeezed near t = 0.
WIDENING = 10.0


def self_free_energy(t: float, omega_c: float = 1.0) -> float:
    """t·ln(1 − e^{−ω_C/t}) in units of ħω_ref."""
    NumberValidator.nonnegative("t", t).merge(NumberValidator.positive("omega_c", omega_c)).raise_if_invalid()
    if t == 0:
        return 0.0
    return t * math.log1p(-math.exp(-omega_c / t))


def self_entropy(t: float, omega_c: float = 1.0) -> float:
    """−∂F_self/∂t = −ln(1 − e^{−x}) + x/(eˣ − 1), x = ω_C/t; units k_B."""
    NumberValidator.nonnegative("t", t).merge(NumberValidator.positive("omega_c", omega_c)).raise_if_invalid()
    if t == 0:
        return 0.0
    x = omega_c / t
    return -math.log1p(-math.exp(-x)) + bose_factor(x)


def temperature_step(t: float):
    """Stencil step for d/dt at t, and whether it had to be squeezed to keep t − 2h > 0."""
    h = max(RELATIVE_STEP * t, MIN_STEP)
    if h >= t / 4.0:
        return t / 8.0, True
    return h, False


def interaction_entropy(
    p: ReducedParams,
    rm: Optional[ResistanceModel] = None,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
) -> ThermoResult:
    """S = −dF/dt along ω_R(t) from ``rm``, in units of k_B."""
    rm = rm or ResistanceModel.fixed()
    if p.t == 0 or p.m == 0:
        return ThermoResult(0.0, 0.0)
    q = q if q is not None else QuadratureConfig.from_settings()

    def free_energy_at(t: float) -> ThermoResult:
        point = p.replace(t=t, omega_r=rm.omega_r(t, p.omega_r))
        return interaction_free_energy(point, q, classical)

    h, squeezed = temperature_step(p.t)
    slope = derivative(free_energy_at, p.t, h)
    result = slope.scaled(-1.0)
    if squeezed:
        logger.warning("entropy step squeezed to %g at t=%g; error estimate widened", h, p.t)
        result = ThermoResult(result.value, result.abs_error_estimate * WIDENING)
    return result


def total_entropy(
    p: ReducedParams,
    rm: Optional[ResistanceModel] = None,
    q: Optional[QuadratureConfig] = None,
    classical: bool = False,
) -> ThermoResult:
    """Interaction entropy plus the self entropies of both wires."""
    if p.omega_c is None:
        raise ValidationException("total_entropy needs omega_c: the self term belongs to an RLC oscillator",
                                  code="missing_capacitance")
    interaction = interaction_entropy(p, rm, q, classical)
    return ThermoResult(
        interaction.value + 2.0 * self_entropy(p.t, p.omega_c),
        interaction.abs_error_estimate,
    )
