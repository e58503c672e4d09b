"""
Negatively associated sequences and their independent copies.

Three classical NA families are provided: draws without replacement from a
finite population, centered multinomial counts, and Gaussian vectors with
nonpositive off-diagonal covariance. Every model emits exactly centered
coordinates (centering is analytic, never empirical).

Randomness is keyed: a block of replicates is generated from numpy's
counter-based Philox bit generator seeded with
``SeedSequence([master_seed, stream_tag, block_index])``. Replicate ``r``
lives in block ``r // block_size``, so a run does not depend on how blocks are
spread over worker threads.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, ClassVar, List, Mapping, NamedTuple, Tuple

import numpy as np
from scipy import stats

from na_bounds.core.errors import SamplingError, config_validation_error
from na_bounds.core.moments import (
    BoundedDiscrete,
    CenteredGaussian,
    DistributionSpec,
    FinitePopulationValue,
)
from na_bounds.types import ModelKind

logger = logging.getLogger(__name__)

# stream tags separate the draws of different consumers of one master seed
PATH_STREAM = 0
WALK_STREAM = 1

SYMMETRY_TOL = 1e-12


def block_generator(master_seed: int, stream_tag: int, block_index: int) -> np.random.Generator:
    """Generator for one block of replicates."""
    seed_seq = np.random.SeedSequence([master_seed, stream_tag, block_index])
    return np.random.Generator(np.random.Philox(seed_seq))


class PathBlock(NamedTuple):
    """Paired NA and independent-copy values, each of shape (size, n)."""

    na: np.ndarray
    independent: np.ndarray


class NAModel(ABC):
    """A negatively associated model of ``n`` centered coordinates."""

    kind: ClassVar[ModelKind]

    @property
    @abstractmethod
    def n(self) -> int: ...

    @abstractmethod
    def draw_block(self, rng: np.random.Generator, size: int) -> PathBlock:
        """Draw ``size`` NA paths and their independent copies from shared randomness."""

    @abstractmethod
    def marginals(self) -> List[DistributionSpec]:
        """Law of each coordinate, in coordinate order."""

    @abstractmethod
    def describe(self) -> str: ...


@dataclass(frozen=True)
class SamplingWithoutReplacement(NAModel):
    """
    ``n_draw`` successive draws without replacement from a centered population.

    The NA draw orders the population by i.i.d. uniforms; the independent
    copy maps the same uniforms to with-replacement indices.
    """

    population: Tuple[float, ...]
    n_draw: int
    centered_population: np.ndarray = field(init=False, repr=False, compare=False)

    kind: ClassVar[ModelKind] = ModelKind.SAMPLING_WITHOUT_REPLACEMENT

    def __post_init__(self) -> None:
        object.__setattr__(self, "population", tuple(float(v) for v in self.population))
        size = len(self.population)
        if size == 0:
            raise SamplingError("population is empty", model_kind=self.kind.value)
        if not 1 <= self.n_draw <= size:
            raise SamplingError(
                f"n_draw={self.n_draw} must lie in [1, {size}]", model_kind=self.kind.value
            )
        values = np.asarray(self.population)
        object.__setattr__(self, "centered_population", values - values.mean())

    @property
    def n(self) -> int:
        return self.n_draw

    def draw_block(self, rng: np.random.Generator, size: int) -> PathBlock:
        u = rng.random((size, len(self.population)))
        order = np.argsort(u, axis=1, kind="stable")[:, : self.n_draw]
        with_replacement = np.minimum(
            (u[:, : self.n_draw] * len(self.population)).astype(np.int64), len(self.population) - 1
        )
        return PathBlock(self.centered_population[order], self.centered_population[with_replacement])

    def marginals(self) -> List[DistributionSpec]:
        law = FinitePopulationValue(tuple(self.centered_population.tolist())).centered_version()
        return [law] * self.n_draw

    def describe(self) -> str:
        return f"without_replacement(N={len(self.population)},n={self.n_draw})"


@dataclass(frozen=True)
class MultinomialCounts(NAModel):
    """
    Category counts of ``trials`` multinomial trials minus their expectations.

    Both paths are driven by one uniform per coordinate through binomial
    inverse CDFs: the NA path uses the chain of conditional binomials, the
    independent copy the unconditional marginals.
    """

    trials: int
    probs: Tuple[float, ...]

    kind: ClassVar[ModelKind] = ModelKind.MULTINOMIAL_COUNTS

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(float(q) for q in self.probs))
        if self.trials < 1:
            raise SamplingError(f"trials={self.trials} must be positive", model_kind=self.kind.value)
        if len(self.probs) < 2 or any(q < 0.0 for q in self.probs):
            raise SamplingError("need at least two nonnegative probabilities", model_kind=self.kind.value)
        if abs(sum(self.probs) - 1.0) > SYMMETRY_TOL:
            raise SamplingError(f"probabilities sum to {sum(self.probs)!r}", model_kind=self.kind.value)

    @property
    def n(self) -> int:
        return len(self.probs)

    def draw_block(self, rng: np.random.Generator, size: int) -> PathBlock:
        u = rng.random((size, self.n))
        p = np.asarray(self.probs)
        expected = self.trials * p

        independent = stats.binom.ppf(u, self.trials, p)
        independent = np.clip(independent, 0, self.trials)

        counts = np.empty_like(u)
        remaining = np.full(size, float(self.trials))
        mass_left = 1.0
        for i in range(self.n):
            if i == self.n - 1 or mass_left <= 0.0:
                share = 1.0 if mass_left > 0.0 else 0.0
            else:
                share = min(1.0, p[i] / mass_left)
            draw = stats.binom.ppf(u[:, i], remaining, share) if share < 1.0 else remaining
            counts[:, i] = np.clip(draw, 0.0, remaining)
            remaining = remaining - counts[:, i]
            mass_left -= p[i]
        return PathBlock(counts - expected, independent - expected)

    def marginals(self) -> List[DistributionSpec]:
        laws: List[DistributionSpec] = []
        k = np.arange(self.trials + 1)
        for q in self.probs:
            pmf = stats.binom.pmf(k, self.trials, q)
            pmf = pmf / pmf.sum()
            atoms = tuple((float(v - self.trials * q), float(w)) for v, w in zip(k, pmf) if w > 0.0)
            laws.append(BoundedDiscrete(atoms).centered_version())
        return laws

    def describe(self) -> str:
        return f"multinomial(trials={self.trials},k={self.n})"


@dataclass(frozen=True)
class GaussianNegCov(NAModel):
    """
    Centered Gaussian vector whose covariance has nonpositive off-diagonals.

    Paths are ``L z`` for a triangular factor ``L`` of the covariance; the
    independent copy scales the same ``z`` by the marginal standard deviations.
    """

    covariance: Tuple[Tuple[float, ...], ...]
    factor: np.ndarray = field(init=False, repr=False, compare=False)

    kind: ClassVar[ModelKind] = ModelKind.GAUSSIAN_NEG_COV

    def __post_init__(self) -> None:
        cov = np.asarray(self.covariance, dtype=float)
        object.__setattr__(self, "covariance", tuple(tuple(row) for row in cov.tolist()))
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] == 0:
            raise SamplingError(f"covariance must be square, got shape {cov.shape}", model_kind=self.kind.value)
        if not np.allclose(cov, cov.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise SamplingError("covariance is not symmetric", model_kind=self.kind.value)
        off_diagonal = cov[~np.eye(cov.shape[0], dtype=bool)]
        if off_diagonal.size and off_diagonal.max() > 0.0:
            raise SamplingError(
                f"positive off-diagonal covariance {off_diagonal.max()!r}; model is not NA",
                model_kind=self.kind.value,
            )
        if np.any(np.diag(cov) <= 0.0):
            raise SamplingError("variances must be positive", model_kind=self.kind.value)
        object.__setattr__(self, "factor", _factorize(cov, self.kind))

    @classmethod
    def equicorrelated(cls, n: int, rho: float, sigma: float = 1.0) -> "GaussianNegCov":
        """Covariance ``sigma^2 (I + rho (J - I))`` with ``rho <= 0``."""
        cov = sigma**2 * (np.eye(n) + rho * (np.ones((n, n)) - np.eye(n)))
        return cls(tuple(tuple(row) for row in cov.tolist()))

    @property
    def n(self) -> int:
        return len(self.covariance)

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.covariance)

    def draw_block(self, rng: np.random.Generator, size: int) -> PathBlock:
        z = rng.standard_normal((size, self.n))
        sd = np.sqrt(np.diag(self.matrix))
        return PathBlock(z @ self.factor.T, z * sd)

    def marginals(self) -> List[DistributionSpec]:
        return [CenteredGaussian(float(s)) for s in np.sqrt(np.diag(self.matrix))]

    def describe(self) -> str:
        return f"gaussian_neg_cov(n={self.n})"


def _factorize(cov: np.ndarray, kind: ModelKind) -> np.ndarray:
    """Cholesky factor, or a symmetric square root for singular PSD matrices."""
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        w, v = np.linalg.eigh(cov)
        if w.min() < -SYMMETRY_TOL * max(1.0, abs(w.max())):
            raise SamplingError(
                f"covariance is not positive semidefinite (min eigenvalue {w.min()!r})",
                model_kind=kind.value,
            )
        logger.debug("covariance is singular; using eigen-decomposition factor")
        return v * np.sqrt(np.clip(w, 0.0, None))


@dataclass(frozen=True)
class SamplePath:
    values: np.ndarray
    prefix_sums: np.ndarray
    running_max: float
    seed: int

    @classmethod
    def from_values(cls, values: np.ndarray, seed: int) -> "SamplePath":
        prefix = np.concatenate(([0.0], np.cumsum(values)))
        return cls(values=values, prefix_sums=prefix, running_max=float(prefix[1:].max()), seed=seed)


def sample_paths_block(
    model: NAModel, master_seed: int, block_index: int, size: int, stream_tag: int = PATH_STREAM
) -> PathBlock:
    """Generate one block of paired paths; a pure function of its arguments."""
    rng = block_generator(master_seed, stream_tag, block_index)
    return model.draw_block(rng, size)


def sample_na_path(model: NAModel, seed: int) -> SamplePath:
    return SamplePath.from_values(sample_paths_block(model, seed, 0, 1).na[0], seed)


def sample_independent_path(model: NAModel, seed: int) -> SamplePath:
    return SamplePath.from_values(sample_paths_block(model, seed, 0, 1).independent[0], seed)


def marginal_distributions(model: NAModel) -> List[DistributionSpec]:
    """Marginal laws of the model, centered, one per coordinate."""
    return model.marginals()


def model_from_dict(entry: Mapping[str, Any]) -> NAModel:
    """Parse the ``model`` section of an experiment configuration."""
    try:
        kind = ModelKind(entry["kind"])
    except (KeyError, ValueError) as e:
        raise config_validation_error("model.kind", entry.get("kind"), "unknown model kind") from e

    try:
        if kind == ModelKind.SAMPLING_WITHOUT_REPLACEMENT:
            population = entry.get("population")
            if population is None:
                # shorthand for a balanced +-1 population
                half = int(entry["balanced_size"]) // 2
                population = [-1.0] * half + [1.0] * half
            return SamplingWithoutReplacement(tuple(population), int(entry["n_draw"]))
        if kind == ModelKind.MULTINOMIAL_COUNTS:
            return MultinomialCounts(int(entry["trials"]), tuple(entry["probs"]))
        if "covariance" in entry:
            return GaussianNegCov(tuple(tuple(row) for row in entry["covariance"]))
        return GaussianNegCov.equicorrelated(int(entry["n"]), float(entry["rho"]), float(entry.get("sigma", 1.0)))
    except KeyError as e:
        raise config_validation_error(f"model.{e.args[0]}", None, f"required for {kind.value}") from e
    except (TypeError, ValueError) as e:
        raise config_validation_error("model", dict(entry), str(e)) from e
