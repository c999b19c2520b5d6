"""Temperature dependence of the wire resistance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from noisywires.apps.core.exceptions import ValidationException
from noisywires.apps.core.validators import NumberValidator

FIXED = "fixed"
POWER_LAW = "power-law"


@dataclass(frozen=True)
class ResistanceModel:
    """ω_R as a function of t: either the point's own value or c·tᵖ."""

    kind: str = FIXED
    coefficient: Optional[float] = None
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.kind == FIXED:
            return
        if self.kind != POWER_LAW:
            raise ValidationException(f"unknown resistance model {self.kind!r}", code="resistance_model")
        result = NumberValidator.nonnegative("coefficient", self.coefficient)
        result.merge(NumberValidator.nonnegative("exponent", self.exponent))
        result.raise_if_invalid()

    @classmethod
    def fixed(cls) -> "ResistanceModel":
        return cls()

    @classmethod
    def power_law(cls, coefficient: float, exponent: float) -> "ResistanceModel":
        return cls(kind=POWER_LAW, coefficient=coefficient, exponent=exponent)

    @property
    def is_fixed(self) -> bool:
        return self.kind == FIXED

    def omega_r(self, t: float, base: float) -> float:
        if self.is_fixed:
            return base
        if t == 0:
            return 0.0 if self.exponent > 0 else self.coefficient
        return self.coefficient * t ** self.exponent

    def describe(self) -> str:
        if self.is_fixed:
            return FIXED
        return f"{POWER_LAW}:{self.coefficient!r}:{self.exponent!r}"
