"""
Custom exceptions for the noisywires toolkit.
Provides domain-specific exceptions with consistent error handling patterns.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional


@dataclass
class ErrorDetail:
    """Structured error detail with context information."""
    message: str
    code: str
    field: Optional[str] = None
    context: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation."""
        data = {
            "message": self.message,
            "code": self.code,
        }
        if self.field:
            data["field"] = self.field
        if self.context:
            data["context"] = self.context
        return data


class NoisyWiresException(Exception):
    """Base exception for all toolkit exceptions."""

    exit_code = 3
    error_code = "internal_error"
    message = "An unexpected error occurred"

    def __init__(
        self,
        message: Optional[str] = None,
        code: Optional[str] = None,
        exit_code: Optional[int] = None,
        details: Optional[List[ErrorDetail]] = None,
    ):
        self.message = message or self.message
        self.error_code = code or self.error_code
        self.exit_code = exit_code or self.exit_code
        self.details = details or []
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to an error record."""
        return {
            "success": False,
            "error": {
                "code": self.error_code,
                "message": self.message,
                "exit_code": self.exit_code,
                "details": [d.to_dict() for d in self.details],
            },
        }


class ValidationException(NoisyWiresException):
    """Raised when an input violates a domain precondition."""

    exit_code = 2
    error_code = "validation_error"
    message = "Validation failed"


class CouplingBoundError(ValidationException):
    """Raised when the mutual inductance violates |M| < L (m² < 1)."""

    error_code = "coupling_bound"
    message = "Coupling must satisfy m² < 1 (|M| < L)"


class ReferenceFrequencyError(ValidationException):
    """Raised when no reference frequency can be derived from the circuit."""

    error_code = "reference_frequency"
    message = "R = 0 without capacitance defines no frequency scale; supply omega_ref explicitly"


class SimConfigError(ValidationException):
    """Raised when a Langevin configuration breaks its stability or length invariants."""

    error_code = "sim_config_error"
    message = "Invalid simulation configuration"


class SweepSpecError(ValidationException):
    """Raised when a sweep definition is inconsistent."""

    error_code = "sweep_spec_error"
    message = "Invalid sweep definition"


class NumericalException(NoisyWiresException):
    """Base exception for numerical failures."""

    exit_code = 3
    error_code = "numerical_error"
    message = "Numerical evaluation failed"


class ConvergenceError(NumericalException):
    """Raised when quadrature or differentiation does not converge.

    The partial result and its error estimate are kept on the exception.
    """

    error_code = "convergence_error"
    message = "Quadrature did not converge within the subdivision limit"

    def __init__(
        self,
        message: Optional[str] = None,
        partial_value: float = float("nan"),
        abs_error_estimate: float = float("inf"),
        details: Optional[List[ErrorDetail]] = None,
    ):
        self.partial_value = partial_value
        self.abs_error_estimate = abs_error_estimate
        super().__init__(message=message, details=details)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["error"]["partial_value"] = self.partial_value
        data["error"]["abs_error_estimate"] = self.abs_error_estimate
        return data


class NumericalBlowupError(NumericalException):
    """Raised when a simulated state becomes non-finite."""

    error_code = "numerical_blowup"
    message = "Simulation state became non-finite"

    def __init__(self, message: Optional[str] = None, step_index: int = -1):
        self.step_index = step_index
        super().__init__(
            message=message,
            details=[ErrorDetail(message=f"first non-finite step {step_index}", code="step_index",
                                 context={"step_index": step_index})],
        )


class SingularityError(NumericalException):
    """Raised when a kernel or matrix is evaluated at a singular configuration."""

    error_code = "singularity"
    message = "Configuration is singular"


class AcceptanceFailure(NoisyWiresException):
    """Raised when one or more acceptance criteria fail."""

    exit_code = 1
    error_code = "acceptance_failure"
    message = "Acceptance criteria failed"
