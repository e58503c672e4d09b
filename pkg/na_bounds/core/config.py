"""
Centralized configuration management for na_bounds.

Run-wide defaults (replicate counts, seeds, worker threads, numerical grid
sizes) with validation, environment overrides and JSON/YAML persistence.
"""

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Union

from na_bounds.core.errors import config_validation_error

# Optional YAML support
try:
    import yaml

    HAS_YAML = True
except ImportError:
    yaml = None
    HAS_YAML = False


@dataclass
class NABoundsConfig:
    """Run-wide defaults shared by the Monte Carlo engine, the numerics and the CLI."""

    # Monte Carlo configuration
    reps: int = 100_000
    master_seed: int = 20170101
    threads: int = 1
    block_size: int = 1000  # replicates per random stream block

    # Numerical configuration
    k_max: int = 10  # highest moment order checked for the Bernstein condition
    alpha_default: float = 0.5
    weak_norm_grid: int = 4096
    b_grid: int = 200
    t1_cap_factor: float = 1e6
    quad_rel_tol: float = 1e-10

    # Output configuration
    csv_digits: int = 17

    def __post_init__(self) -> None:
        """validate config and apply env overrides"""
        self._apply_environment_overrides()
        self._validate_config()

    def _validate_config(self) -> None:
        if self.reps <= 0:
            raise config_validation_error("reps", self.reps, "must be positive")

        if self.master_seed < 0:
            raise config_validation_error(
                "master_seed", self.master_seed, "cannot be negative"
            )

        if self.threads <= 0:
            raise config_validation_error("threads", self.threads, "must be positive")

        if self.block_size <= 0:
            raise config_validation_error(
                "block_size", self.block_size, "must be positive"
            )

        if self.k_max < 2:
            raise config_validation_error("k_max", self.k_max, "must be >= 2")

        if not 0.0 < self.alpha_default < 1.0:
            raise config_validation_error(
                "alpha_default", self.alpha_default, "must lie in (0, 1)"
            )

        if self.weak_norm_grid < 16 or self.b_grid < 2:
            raise config_validation_error(
                "weak_norm_grid/b_grid",
                (self.weak_norm_grid, self.b_grid),
                "grids too coarse",
            )

        if self.t1_cap_factor <= 1.0:
            raise config_validation_error(
                "t1_cap_factor", self.t1_cap_factor, "must exceed 1"
            )

        if not 0.0 < self.quad_rel_tol < 1e-3:
            raise config_validation_error(
                "quad_rel_tol", self.quad_rel_tol, "must lie in (0, 1e-3)"
            )

        if not 1 <= self.csv_digits <= 17:
            raise config_validation_error(
                "csv_digits", self.csv_digits, "must lie in [1, 17]"
            )

    def _apply_environment_overrides(self) -> None:
        """
        Overrides configuration attributes with values from corresponding environment variables.

        Raises a ConfigurationError if an environment variable cannot be converted to the expected type.
        """
        env_mappings = {
            "NA_BOUNDS_REPS": ("reps", int),
            "NA_BOUNDS_SEED": ("master_seed", int),
            "NA_BOUNDS_THREADS": ("threads", int),
            "NA_BOUNDS_BLOCK_SIZE": ("block_size", int),
            "NA_BOUNDS_K_MAX": ("k_max", int),
        }

        for env_var, (attr_name, type_converter) in env_mappings.items():
            env_value = os.getenv(env_var)
            if env_value is not None:
                try:
                    setattr(self, attr_name, type_converter(env_value))
                except (ValueError, TypeError) as e:
                    raise config_validation_error(
                        env_var, env_value, f"not a valid {type_converter.__name__}"
                    ) from e

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "NABoundsConfig":
        """
        creates config instance from dictionary

        Unknown keys are a configuration error rather than a TypeError.
        """
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(config_dict) - known)
        if unknown:
            raise config_validation_error(unknown[0], config_dict[unknown[0]], "unknown key")
        return cls(**config_dict)

    @classmethod
    def from_file(cls, config_path: Union[str, Path]) -> "NABoundsConfig":
        """
        Loads an NABoundsConfig instance from a JSON or YAML configuration file.

        Raises:
            ConfigurationError: missing file, unsupported suffix, or invalid content.
        """
        return cls.from_dict(load_mapping(config_path))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def save_to_file(self, config_path: Union[str, Path]) -> None:
        """
        Saves the configuration to a JSON or YAML file.

        Args:
            config_path: output config file path, extension determines format
        """
        config_path_obj = Path(config_path)
        config_dict = self.to_dict()

        if config_path_obj.suffix.lower() == ".json":
            import json

            with open(config_path_obj, "w") as f:
                json.dump(config_dict, f, indent=2)
        elif config_path_obj.suffix.lower() in {".yml", ".yaml"}:
            if not HAS_YAML or yaml is None:
                raise ImportError("PyYAML is required to save YAML configuration files")
            with open(config_path_obj, "w") as f:
                yaml.safe_dump(config_dict, f, default_flow_style=False)
        else:
            raise config_validation_error(
                "config_path", str(config_path_obj), "unsupported file format"
            )

    def update(self, **kwargs: Any) -> "NABoundsConfig":
        """
        Returns a new configuration instance with updated values for specified parameters.
        """
        config_dict = self.to_dict()
        config_dict.update(kwargs)
        return self.from_dict(config_dict)


def load_mapping(config_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON or YAML file into a dictionary.

    The suffix selects the parser (``.json``, ``.yml``, ``.yaml``).
    """
    path = Path(config_path)

    if not path.exists():
        raise config_validation_error("config", str(path), "file not found")

    suffix = path.suffix.lower()
    try:
        if suffix == ".json":
            import json

            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        elif suffix in {".yml", ".yaml"}:
            if not HAS_YAML or yaml is None:
                raise ImportError("PyYAML is required to load YAML configuration files")
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        else:
            raise config_validation_error("config", str(path), f"unsupported format {suffix!r}")
    except (ValueError, OSError) as e:
        # json.JSONDecodeError is a ValueError; yaml errors are wrapped below
        raise config_validation_error("config", str(path), f"unreadable: {e}") from e
    except Exception as e:
        if yaml is not None and isinstance(e, yaml.YAMLError):
            raise config_validation_error("config", str(path), f"unreadable: {e}") from e
        raise

    if not isinstance(data, dict):
        raise config_validation_error("config", str(path), "top level must be a mapping")
    return data


# Global default configuration instance
DEFAULT_CONFIG = NABoundsConfig()


def get_config() -> NABoundsConfig:
    """
    returns current global config instance
    """
    return DEFAULT_CONFIG


def set_config(config: NABoundsConfig) -> None:
    """
    sets global config instance
    """
    global DEFAULT_CONFIG
    DEFAULT_CONFIG = config


def create_config_from_cli_args(**kwargs: Any) -> NABoundsConfig:
    """
    Create configuration from CLI arguments, filtering out None values.

    Args:
        **kwargs: CLI arguments that map to configuration parameters

    Returns:
        NABoundsConfig instance with CLI overrides applied
    """
    config_dict = {k: v for k, v in kwargs.items() if v is not None}
    return get_config().update(**config_dict)
