"""
Test configuration and fixtures for na_bounds.
"""

import sys
from pathlib import Path
from typing import Any, Callable, Dict

import pytest
import yaml

# Add the repository root to the Python path to ensure imports work correctly
repo_root = Path(__file__).parent.parent
sys.path.insert(0, str(repo_root))

from na_bounds.core.config import NABoundsConfig, set_config  # noqa: E402
from na_bounds.core.moments import BoundedDiscrete, moment_summary  # noqa: E402
from na_bounds.core.sampler import SamplingWithoutReplacement  # noqa: E402

ENV_VARS = (
    "NA_BOUNDS_REPS",
    "NA_BOUNDS_SEED",
    "NA_BOUNDS_THREADS",
    "NA_BOUNDS_BLOCK_SIZE",
    "NA_BOUNDS_K_MAX",
)


@pytest.fixture(autouse=True)
def clean_global_config(monkeypatch):
    """Every test starts from the built-in defaults with no environment overrides."""
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    set_config(NABoundsConfig())
    yield
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    set_config(NABoundsConfig())


@pytest.fixture
def rademacher():
    return BoundedDiscrete(((-1.0, 0.5), (1.0, 0.5)), centered=True)


@pytest.fixture
def rademacher_summary(rademacher):
    """Functionals of fifty +-1 summands."""
    return moment_summary([rademacher] * 50)


@pytest.fixture
def balanced_population():
    """Fifty draws without replacement from a population of 100 minus ones and 100 ones."""
    return SamplingWithoutReplacement((-1.0,) * 100 + (1.0,) * 100, 50)


def _experiment_dict(**run_overrides: Any) -> Dict[str, Any]:
    run: Dict[str, Any] = {"x_grid": [1.0, 2.0, 3.0], "reps": 2000, "master_seed": 7, "threads": 1}
    run.update(run_overrides)
    return {
        "model": {"kind": "sampling_without_replacement", "balanced_size": 200, "n_draw": 50},
        "bounds": [{"id": "bernstein_sharp"}],
        "run": run,
    }


@pytest.fixture
def make_experiment() -> Callable[..., Dict[str, Any]]:
    """Small validation experiment on the balanced population; keyword arguments override the run section."""
    return _experiment_dict


@pytest.fixture
def write_experiment(tmp_path) -> Callable[..., Path]:
    """Write an experiment mapping to a YAML file and return its path."""

    def write(data: Dict[str, Any], name: str = "experiment.yaml") -> Path:
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data, sort_keys=False))
        return path

    return write
