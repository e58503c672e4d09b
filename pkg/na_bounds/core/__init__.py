"""Numerical core for na_bounds."""

from na_bounds.core.bounds import BoundedRangeSpec, BoundResult, ExpMomentConstants
from na_bounds.core.config import NABoundsConfig, get_config
from na_bounds.core.errors import (
    ConfigurationError,
    ConvergenceError,
    DegenerateInputError,
    DomainError,
    MismatchError,
    MomentDivergenceError,
    NABoundsError,
    SamplingError,
)
from na_bounds.core.moments import DistributionSpec, MomentSummary, moment_summary
from na_bounds.core.sampler import GaussianNegCov, MultinomialCounts, NAModel, SamplingWithoutReplacement

__all__ = [
    "BoundResult",
    "BoundedRangeSpec",
    "ExpMomentConstants",
    "NABoundsConfig",
    "get_config",
    "NABoundsError",
    "DomainError",
    "DegenerateInputError",
    "ConvergenceError",
    "MomentDivergenceError",
    "SamplingError",
    "ConfigurationError",
    "MismatchError",
    "DistributionSpec",
    "MomentSummary",
    "moment_summary",
    "NAModel",
    "SamplingWithoutReplacement",
    "MultinomialCounts",
    "GaussianNegCov",
]
