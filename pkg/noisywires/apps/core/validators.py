"""
Validation framework for parameter preconditions.
Collects every violated precondition before raising, so error records list them all.
"""

import math
from typing import Any, Dict, List, Optional, Tuple, Type

from .exceptions import ErrorDetail, ValidationException


class ValidationResult:
    """Collected validation errors."""
    def __init__(self):
        self.errors: List[Tuple[str, str, Dict]] = []  # (field, message, context)
        self.is_valid = True

    def add_error(self, field: str, message: str, context: Optional[Dict] = None):
        """Add validation error."""
        self.errors.append((field, message, context or {}))
        self.is_valid = False

    def merge(self, other: "ValidationResult") -> "ValidationResult":
        for field, message, context in other.errors:
            self.add_error(field, message, context)
        return self

    def raise_if_invalid(self, exc_class: Type[ValidationException] = ValidationException):
        """Raise ``exc_class`` carrying every collected error."""
        if self.is_valid:
            return
        details = [
            ErrorDetail(message=message, code="invalid", field=field, context=_jsonable(context))
            for field, message, context in self.errors
        ]
        raise exc_class("; ".join(message for _, message, _ in self.errors), details=details)

    def __bool__(self) -> bool:
        return self.is_valid


def _jsonable(context: Dict[str, Any]) -> Dict[str, Any]:
    return {key: (value if isinstance(value, (int, float, str, bool)) or value is None else repr(value))
            for key, value in context.items()}


class NumberValidator:
    """Validators for scalar numerical inputs."""

    @staticmethod
    def finite(field: str, value: float) -> ValidationResult:
        result = ValidationResult()
        if value is None or not math.isfinite(value):
            result.add_error(field, f"{field} must be finite", {field: value})
        return result

    @staticmethod
    def positive(field: str, value: float) -> ValidationResult:
        result = NumberValidator.finite(field, value)
        if result and value <= 0:
            result.add_error(field, f"{field} must be > 0", {field: value})
        return result

    @staticmethod
    def nonnegative(field: str, value: float) -> ValidationResult:
        result = NumberValidator.finite(field, value)
        if result and value < 0:
            result.add_error(field, f"{field} must be >= 0", {field: value})
        return result

    @staticmethod
    def at_least(field: str, value: int, minimum: int) -> ValidationResult:
        result = ValidationResult()
        if value is None or value < minimum:
            result.add_error(field, f"{field} must be >= {minimum}", {field: value, "min": minimum})
        return result


class CouplingValidator:
    """Validators for the inductive coupling bound."""

    @staticmethod
    def validate_m(m: float) -> ValidationResult:
        """Strict bound m² < 1."""
        result = NumberValidator.finite("m", m)
        if result and m * m >= 1.0:
            result.add_error("m", "coupling must satisfy m² < 1", {"m": m})
        return result

    @staticmethod
    def validate_inductances(L: float, M: float) -> ValidationResult:
        """Strict bound |M| < L."""
        result = NumberValidator.positive("L", L)
        result.merge(NumberValidator.finite("M", M))
        if result and abs(M) >= L:
            result.add_error("M", "mutual inductance must satisfy |M| < L", {"L": L, "M": M})
        return result
