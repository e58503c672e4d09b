"""Tests for the error hierarchy and its helpers."""

import pytest

from na_bounds.core.errors import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    MismatchError,
    MomentDivergenceError,
    NABoundsError,
    config_validation_error,
    divergence_error,
    domain_error,
    require,
)


class TestNABoundsError:
    def test_default_code_is_class_name(self):
        assert NABoundsError("boom").error_code == "NABOUNDSERROR"
        assert ConvergenceError("slow").error_code == "CONVERGENCEERROR"

    def test_string_form(self):
        error = ConvergenceError("no bracket", routine="young_transform", iterations=3)
        assert str(error) == "[CONVERGENCEERROR] no bracket (Context: routine=young_transform, iterations=3)"

    def test_to_dict(self):
        cause = ValueError("inner")
        error = MismatchError("x differs", field="x", expected=1.0, actual=2.0, cause=cause)
        data = error.to_dict()
        assert data["error_type"] == "MismatchError"
        assert data["context"] == {"field": "x", "expected": 1.0, "actual": 2.0}
        assert data["cause"] == "inner"

    def test_hierarchy(self):
        for cls in (DomainError, ConfigurationError, MomentDivergenceError, MismatchError):
            assert issubclass(cls, NABoundsError)


class TestHelpers:
    def test_domain_error(self):
        error = domain_error("K_n", 0.5, "K_n >= 1")
        assert error.error_code == "DOMAIN_VIOLATION"
        assert error.message == "K_n=0.5 violates K_n >= 1"
        assert error.context == {"parameter": "K_n", "value": 0.5, "constraint": "K_n >= 1"}

    def test_domain_error_keeps_zero_value(self):
        assert domain_error("x", 0.0, "x > 0").context["value"] == 0.0

    def test_config_validation_error(self):
        error = config_validation_error("reps", -1, "must be positive")
        assert isinstance(error, ConfigurationError)
        assert error.error_code == "CONFIG_INVALID"
        assert error.message == "Invalid configuration for 'reps': must be positive"
        assert error.context == {"config_key": "reps", "config_value": -1}

    def test_divergence_error(self):
        error = divergence_error("K_exp", "CenteredGaussian", "p > 2")
        assert error.error_code == "MOMENT_DIVERGENT"
        assert error.context["functional"] == "K_exp"

    def test_require(self):
        require(True, "alpha", 0.5, "0 < alpha < 1")
        with pytest.raises(DomainError) as exc:
            require(False, "alpha", 1.5, "0 < alpha < 1")
        assert "0 < alpha < 1" in str(exc.value)
