"""
Experiment configuration files.

An experiment is a JSON or YAML mapping with four sections::

    model:          # NA model (optional when distributions are given)
      kind: sampling_without_replacement
      balanced_size: 200
      n_draw: 50
    distributions:  # marginal laws (defaults to the model's marginals)
      - {kind: bounded_discrete, support: [[-1, 0.5], [1, 0.5]], count: 50}
    bounds:
      - {id: bernstein_sharp}
      - {id: weak_moment, params: {alpha: auto, y: default, p: 3}}
    run:
      x_grid: [5, 10, 15]        # or {start: 1, stop: 20, num: 20}
      reps: 100000
      master_seed: 20170101
      threads: 1
      out: validation.csv
      moments: {p_fuk: 4, p_semi: 0.5, p_exp: 2, a: 0.1}
      convex_tests: [{kind: exponential, t: 0.2, use_max: false}]
      supermartingale: {t: 0.5, sigma: 1, n: 100, alpha: 0.5}
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from na_bounds.core.config import NABoundsConfig, create_config_from_cli_args, get_config, load_mapping
from na_bounds.core.errors import DomainError, SamplingError, config_validation_error
from na_bounds.core.moments import DistributionSpec, MomentSummary, distribution_from_dict, moment_summary
from na_bounds.core.montecarlo import MIN_REPS, ConvexTestFunction, SupermartingaleSpec
from na_bounds.core.registry import BoundSelection, validate_params
from na_bounds.core.sampler import NAModel, marginal_distributions, model_from_dict

logger = logging.getLogger(__name__)

SECTIONS = {"model", "distributions", "bounds", "run"}
RUN_KEYS = {
    "x_grid",
    "reps",
    "master_seed",
    "threads",
    "block_size",
    "out",
    "moments",
    "convex_tests",
    "supermartingale",
}
MOMENT_KEYS = {"p_fuk", "p_semi", "p_exp", "a"}


@dataclass(frozen=True)
class ConvexCheck:
    f: ConvexTestFunction
    use_max: bool


@dataclass
class RunSection:
    x_grid: Tuple[float, ...]
    reps: int
    master_seed: int
    threads: int
    block_size: int
    out: Optional[Path] = None
    moments: Dict[str, float] = field(default_factory=dict)
    convex_tests: List[ConvexCheck] = field(default_factory=list)
    supermartingale: Optional[SupermartingaleSpec] = None


@dataclass
class ExperimentConfig:
    """A parsed, validated experiment."""

    model: Optional[NAModel]
    distributions: List[DistributionSpec]
    bounds: List[BoundSelection]
    run: RunSection
    source: Optional[Path] = None
    _summary: Optional[MomentSummary] = field(default=None, init=False, repr=False)

    @property
    def model_label(self) -> str:
        return self.model.describe() if self.model else "distributions"

    def summary(self) -> MomentSummary:
        """Moment functionals of the marginal laws, computed once."""
        if self._summary is None:
            moments = self.run.moments
            self._summary = moment_summary(
                self.distributions,
                p_fuk=moments.get("p_fuk", 4.0),
                p_semi=moments.get("p_semi", 0.5),
                p_exp=moments.get("p_exp", 2.0),
                a=moments.get("a", 0.1),
                y_grid=self.fixed_truncation_levels(),
            )
        return self._summary

    def fixed_truncation_levels(self) -> Tuple[float, ...]:
        """Numeric ``y`` values named by the bound selections; their ``B_n(y)`` is precomputed."""
        levels = {float(s.params["y"]) for s in self.bounds if isinstance(s.params.get("y"), (int, float))}
        return tuple(sorted(y for y in levels if y > 0.0))

    def runtime_config(self) -> NABoundsConfig:
        """Global defaults with this experiment's run settings applied."""
        return create_config_from_cli_args(
            reps=self.run.reps,
            master_seed=self.run.master_seed,
            threads=self.run.threads,
            block_size=self.run.block_size,
        )

    def require_validation_ready(self) -> None:
        if self.model is None:
            raise config_validation_error("model", None, "validation needs an NA model")
        if self.run.reps < MIN_REPS:
            raise config_validation_error("run.reps", self.run.reps, f"must be >= {MIN_REPS} for validation")

    def with_overrides(
        self,
        reps: Optional[int] = None,
        master_seed: Optional[int] = None,
        threads: Optional[int] = None,
        out: Optional[Path] = None,
    ) -> "ExperimentConfig":
        """Apply command-line overrides to the run section."""
        run = self.run
        if reps is not None:
            run.reps = reps
        if master_seed is not None:
            run.master_seed = master_seed
        if threads is not None:
            if threads < 1:
                raise config_validation_error("threads", threads, "must be positive")
            run.threads = threads
        if out is not None:
            run.out = out
        return self

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], source: Optional[Path] = None) -> "ExperimentConfig":
        unknown = sorted(set(data) - SECTIONS)
        if unknown:
            raise config_validation_error(unknown[0], data[unknown[0]], "unknown section")

        try:
            model = model_from_dict(data["model"]) if data.get("model") is not None else None
            distributions = _parse_distributions(data.get("distributions"), model)
        except (SamplingError, DomainError) as e:
            raise config_validation_error(e.context.get("parameter", "model"), None, e.message) from e

        return cls(
            model=model,
            distributions=distributions,
            bounds=_parse_bounds(data.get("bounds")),
            run=_parse_run(data.get("run") or {}),
            source=source,
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        path = Path(path)
        config = cls.from_dict(load_mapping(path), source=path)
        logger.debug(f"loaded experiment {path} with {len(config.bounds)} bounds")
        return config


def _parse_distributions(entries: Any, model: Optional[NAModel]) -> List[DistributionSpec]:
    if entries is None:
        if model is None:
            raise config_validation_error("distributions", None, "give a model or a distributions list")
        return marginal_distributions(model)
    if not isinstance(entries, list) or not entries:
        raise config_validation_error("distributions", entries, "must be a nonempty list")
    dists: List[DistributionSpec] = []
    for entry in entries:
        if not isinstance(entry, Mapping):
            raise config_validation_error("distributions", entry, "each entry must be a mapping")
        dists.extend(distribution_from_dict(entry))
    if model is not None and len(dists) != model.n:
        raise config_validation_error(
            "distributions", len(dists), f"model has n={model.n} coordinates"
        )
    return dists


def _parse_bounds(entries: Any) -> List[BoundSelection]:
    if entries is None:
        return []
    if not isinstance(entries, list):
        raise config_validation_error("bounds", entries, "must be a list")
    selections = []
    for entry in entries:
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, Mapping) or "id" not in entry:
            raise config_validation_error("bounds", entry, "each entry needs an id")
        params = dict(entry.get("params") or {})
        validate_params(str(entry["id"]), params)
        selections.append(BoundSelection(str(entry["id"]), params))
    return selections


def _parse_x_grid(raw: Any) -> Tuple[float, ...]:
    if raw is None:
        raise config_validation_error("run.x_grid", None, "required")
    if isinstance(raw, Mapping):
        try:
            grid = np.linspace(float(raw["start"]), float(raw["stop"]), int(raw["num"]))
        except KeyError as e:
            raise config_validation_error(f"run.x_grid.{e.args[0]}", None, "required") from e
        values = tuple(float(v) for v in grid)
    elif isinstance(raw, (list, tuple)):
        values = tuple(float(v) for v in raw)
    else:
        values = (float(raw),)
    if not values:
        raise config_validation_error("run.x_grid", raw, "must be nonempty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise config_validation_error("run.x_grid", list(values), "must be sorted ascending")
    return values


def _parse_run(run: Mapping[str, Any]) -> RunSection:
    unknown = sorted(set(run) - RUN_KEYS)
    if unknown:
        raise config_validation_error(f"run.{unknown[0]}", run[unknown[0]], "unknown key")
    defaults = get_config()

    moments = dict(run.get("moments") or {})
    bad = sorted(set(moments) - MOMENT_KEYS)
    if bad:
        raise config_validation_error(f"run.moments.{bad[0]}", moments[bad[0]], "unknown key")

    convex = []
    for entry in run.get("convex_tests") or []:
        convex.append(ConvexCheck(ConvexTestFunction.from_dict(entry), bool(entry.get("use_max", False))))

    supermartingale = None
    if run.get("supermartingale") is not None:
        try:
            supermartingale = SupermartingaleSpec.from_dict(run["supermartingale"])
        except DomainError as e:
            raise config_validation_error("run.supermartingale", run["supermartingale"], e.message) from e

    try:
        section = RunSection(
            x_grid=_parse_x_grid(run.get("x_grid", [1.0])),
            reps=int(run.get("reps", defaults.reps)),
            master_seed=int(run.get("master_seed", defaults.master_seed)),
            threads=int(run.get("threads", defaults.threads)),
            block_size=int(run.get("block_size", defaults.block_size)),
            out=Path(run["out"]) if run.get("out") else None,
            moments={k: float(v) for k, v in moments.items()},
            convex_tests=convex,
            supermartingale=supermartingale,
        )
    except (TypeError, ValueError) as e:
        raise config_validation_error("run", dict(run), str(e)) from e

    if section.threads < 1 or section.block_size < 1 or section.reps < 1:
        raise config_validation_error("run", dict(run), "reps, threads and block_size must be positive")
    return section

