"""na-bounds - maximal tail bounds for sums of negatively associated random variables."""

from na_bounds.utils.version import __version__

from na_bounds.core.bounds import BoundedRangeSpec, BoundResult
from na_bounds.core.config import NABoundsConfig, get_config
from na_bounds.core.experiment import ExperimentConfig
from na_bounds.core.registry import BOUND_REGISTRY, evaluate_bound
from na_bounds.core.validation import run_validation

__all__ = [
    "__version__",
    "BoundResult",
    "BoundedRangeSpec",
    "NABoundsConfig",
    "get_config",
    "ExperimentConfig",
    "BOUND_REGISTRY",
    "evaluate_bound",
    "run_validation",
]
