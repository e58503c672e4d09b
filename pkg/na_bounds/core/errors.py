"""
Unified error hierarchy for na_bounds.

Every failure raised by the numerical core carries an error code and a context
dictionary so the CLI can map it to a stable exit code and print a one-line
diagnostic naming the violated precondition.
"""

import logging
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class NABoundsError(Exception):
    """Base exception for all na_bounds operations.

    Carries an error code and structured context for logging and diagnostics.
    """

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None,
    ):
        """
        Initializes an NABoundsError with a message, error code, context, and optional cause.

        Args:
            message: Description of the error.
            error_code: Optional error code; defaults to the uppercase class name if not provided.
            context: Optional dictionary with additional contextual information about the error.
            cause: Optional underlying exception that caused this error.
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__.upper()
        self.context = context or {}
        self.cause = cause

    def __str__(self) -> str:
        base_msg = self.message
        if self.error_code:
            base_msg = f"[{self.error_code}] {base_msg}"
        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            base_msg = f"{base_msg} (Context: {context_str})"
        return base_msg

    def to_dict(self) -> Dict[str, Any]:
        """
        Converts the error instance into a dictionary suitable for structured logging.

        Returns:
            A dictionary containing the error type, code, message, context, and cause.
        """
        return {
            "error_type": self.__class__.__name__,
            "error_code": self.error_code,
            "message": self.message,
            "context": self.context,
            "cause": str(self.cause) if self.cause else None,
        }


class DomainError(NABoundsError):
    """An argument lies outside the domain on which a bound or functional is defined."""

    def __init__(
        self,
        message: str,
        parameter: Optional[str] = None,
        value: Optional[Any] = None,
        constraint: Optional[str] = None,
        **kwargs: Any,
    ) -> None:
        context = kwargs.pop("context", {})
        if parameter:
            context["parameter"] = parameter
        if value is not None:
            context["value"] = value
        if constraint:
            context["constraint"] = constraint

        super().__init__(message, context=context, **kwargs)


class DegenerateInputError(NABoundsError):
    """Inputs are valid but degenerate (zero variance, zero range width)."""

    def __init__(self, message: str, quantity: Optional[str] = None, **kwargs: Any):
        context = kwargs.pop("context", {})
        if quantity:
            context["quantity"] = quantity

        super().__init__(message, context=context, **kwargs)


class ConvergenceError(NABoundsError):
    """A numerical search exceeded its configured cap without converging."""

    def __init__(
        self,
        message: str,
        routine: Optional[str] = None,
        iterations: Optional[int] = None,
        limit: Optional[float] = None,
        **kwargs: Any,
    ):
        context = kwargs.pop("context", {})
        if routine:
            context["routine"] = routine
        if iterations is not None:
            context["iterations"] = iterations
        if limit is not None:
            context["limit"] = limit

        super().__init__(message, context=context, **kwargs)


class MomentDivergenceError(NABoundsError):
    """A moment functional is infinite for the given law."""

    def __init__(
        self,
        message: str,
        functional: Optional[str] = None,
        distribution: Optional[str] = None,
        **kwargs: Any,
    ):
        context = kwargs.pop("context", {})
        if functional:
            context["functional"] = functional
        if distribution:
            context["distribution"] = distribution

        super().__init__(message, context=context, **kwargs)


class SamplingError(NABoundsError):
    """An NA model cannot be sampled (invalid covariance, bad population)."""

    def __init__(self, message: str, model_kind: Optional[str] = None, **kwargs: Any):
        context = kwargs.pop("context", {})
        if model_kind:
            context["model_kind"] = model_kind

        super().__init__(message, context=context, **kwargs)


class ConfigurationError(NABoundsError):
    """Configuration validation and setup errors."""

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        config_value: Optional[Any] = None,
        **kwargs: Any,
    ):
        """
        Initializes a ConfigurationError with an error message and optional configuration details.

        Args:
            message: Description of the configuration error.
            config_key: The configuration key related to the error, if applicable.
            config_value: The value associated with the configuration key, if relevant.
        """
        context = kwargs.pop("context", {})
        if config_key:
            context["config_key"] = config_key
        if config_value is not None:
            context["config_value"] = config_value

        super().__init__(message, context=context, **kwargs)


class MismatchError(NABoundsError):
    """Inputs that must describe the same experiment disagree."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        expected: Optional[Any] = None,
        actual: Optional[Any] = None,
        **kwargs: Any,
    ):
        context = kwargs.pop("context", {})
        if field:
            context["field"] = field
        if expected is not None:
            context["expected"] = expected
        if actual is not None:
            context["actual"] = actual

        super().__init__(message, context=context, **kwargs)


# Convenience functions for common error scenarios
def domain_error(parameter: str, value: Any, constraint: str) -> DomainError:
    """
    Creates a DomainError for a violated precondition.

    Args:
        parameter: Name of the offending argument.
        value: The value that was passed.
        constraint: Human-readable statement of the precondition, e.g. "K_n >= 1".

    Returns:
        A DomainError whose message names the precondition.
    """
    return DomainError(
        f"{parameter}={value!r} violates {constraint}",
        parameter=parameter,
        value=value,
        constraint=constraint,
        error_code="DOMAIN_VIOLATION",
    )


def config_validation_error(key: str, value: Any, reason: str) -> ConfigurationError:
    """
    Creates a ConfigurationError for an invalid configuration entry.

    Args:
        key: The configuration key that failed validation.
        value: The invalid value associated with the key.
        reason: Description of why the configuration is invalid.

    Returns:
        A ConfigurationError instance with details about the invalid configuration.
    """
    return ConfigurationError(
        f"Invalid configuration for '{key}': {reason}",
        config_key=key,
        config_value=value,
        error_code="CONFIG_INVALID",
    )


def divergence_error(functional: str, distribution: str, reason: str) -> MomentDivergenceError:
    """Creates a MomentDivergenceError for an infinite functional."""
    return MomentDivergenceError(
        f"{functional} is infinite for {distribution}: {reason}",
        functional=functional,
        distribution=distribution,
        error_code="MOMENT_DIVERGENT",
    )


def require(condition: bool, parameter: str, value: Any, constraint: str) -> None:
    """Raise a DomainError unless ``condition`` holds."""
    if not condition:
        raise domain_error(parameter, value, constraint)
