"""Circuit parameter models and unit reduction.

Two identical thin wires with self-inductance L, resistance R, optional end-point
capacitance C and mutual inductance M, at temperature T. All thermodynamic
operations consume the dimensionless :class:`ReducedParams`; frequencies are in
units of a reference frequency ω_ref and the temperature enters as
t = k_B T / (ħ ω_ref).

The constant-L, constant-R description holds for sufficiently thin wires at low
enough frequencies; that validity window is the caller's responsibility.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

from scipy import constants

from noisywires.apps.core.exceptions import (
    CouplingBoundError,
    ReferenceFrequencyError,
    ValidationException,
)
from noisywires.apps.core.validators import CouplingValidator, NumberValidator, ValidationResult

HBAR = constants.hbar
K_B = constants.k


@dataclass(frozen=True)
class PhysicalParams:
    """SI description of the wire pair."""

    L: float
    M: float
    R: float
    T: float
    C: Optional[float] = None

    def __post_init__(self):
        result = NumberValidator.positive("L", self.L)
        result.merge(NumberValidator.nonnegative("R", self.R))
        result.merge(NumberValidator.nonnegative("T", self.T))
        if self.C is not None:
            result.merge(NumberValidator.positive("C", self.C))
        result.raise_if_invalid()
        CouplingValidator.validate_inductances(self.L, self.M).raise_if_invalid(CouplingBoundError)

    @property
    def omega_r(self) -> float:
        """Relaxation frequency R/L in rad/s."""
        return self.R / self.L

    @property
    def omega_c(self) -> Optional[float]:
        """End-point resonance 1/√(LC) in rad/s, None without capacitance."""
        if self.C is None:
            return None
        return 1.0 / math.sqrt(self.L * self.C)

    @property
    def kT(self) -> float:
        return K_B * self.T


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless circuit and thermal state.

    ``m`` = M/L, ``omega_r`` = (R/L)/ω_ref, ``omega_c`` = ω_C/ω_ref (None without
    capacitance), ``t`` = k_B T/(ħ ω_ref).
    """

    m: float
    omega_r: float
    t: float
    omega_c: Optional[float] = None

    def __post_init__(self):
        result = ValidationResult()
        result.merge(NumberValidator.nonnegative("omega_r", self.omega_r))
        result.merge(NumberValidator.nonnegative("t", self.t))
        if self.omega_c is not None:
            result.merge(NumberValidator.positive("omega_c", self.omega_c))
        result.raise_if_invalid()
        CouplingValidator.validate_m(self.m).raise_if_invalid(CouplingBoundError)

    @property
    def m2(self) -> float:
        return self.m * self.m

    @property
    def has_capacitance(self) -> bool:
        return self.omega_c is not None

    def replace(self, **changes) -> "ReducedParams":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class ThermoResult:
    """A computed thermodynamic quantity with its numerical error bound."""

    value: float
    abs_error_estimate: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.abs_error_estimate) or self.abs_error_estimate < 0:
            raise ValidationException(
                f"abs_error_estimate must be finite and >= 0, got {self.abs_error_estimate!r}"
            )

    def __float__(self) -> float:
        return float(self.value)

    def scaled(self, factor: float) -> "ThermoResult":
        return ThermoResult(self.value * factor, self.abs_error_estimate * abs(factor))


def reference_frequency(p: PhysicalParams, omega_ref: Optional[float] = None) -> float:
    """ω_ref convention: ω_C with capacitance, else R/L; ``omega_ref`` overrides both."""
    if omega_ref is not None:
        NumberValidator.positive("omega_ref", omega_ref).raise_if_invalid()
        return float(omega_ref)
    if p.omega_c is not None:
        return p.omega_c
    if p.R > 0:
        return p.omega_r
    raise ReferenceFrequencyError()


def to_reduced(p: PhysicalParams, omega_ref: Optional[float] = None) -> ReducedParams:
    """Reduce SI parameters to the dimensionless form.

    With capacitance ``omega_c`` comes out as 1; otherwise ``omega_r`` is 1. For R = 0
    without capacitance pass ``omega_ref`` explicitly.
    """
    w_ref = reference_frequency(p, omega_ref)
    omega_c = None if p.omega_c is None else p.omega_c / w_ref
    return ReducedParams(
        m=p.M / p.L,
        omega_r=p.omega_r / w_ref,
        t=K_B * p.T / (HBAR * w_ref),
        omega_c=omega_c,
    )


def from_reduced(r: ReducedParams, omega_ref: float, L: float) -> PhysicalParams:
    """Inverse of :func:`to_reduced` for a given reference frequency and self-inductance."""
    NumberValidator.positive("omega_ref", omega_ref).merge(
        NumberValidator.positive("L", L)
    ).raise_if_invalid()
    C = None
    if r.omega_c is not None:
        C = 1.0 / (L * (r.omega_c * omega_ref) ** 2)
    return PhysicalParams(
        L=L,
        M=r.m * L,
        R=r.omega_r * omega_ref * L,
        T=r.t * HBAR * omega_ref / K_B,
        C=C,
    )
