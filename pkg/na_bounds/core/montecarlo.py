"""
Monte Carlo estimation of tail probabilities and expectations for NA models.

Replicates are generated in fixed-size blocks (see ``sampler``); each block is
a pure function of ``(master_seed, block_index)`` and block results are
combined in block order, so estimates do not depend on the worker count.
Indicator statistics are aggregated with exact integer counters.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Callable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from na_bounds.core.bounds import BoundResult
from na_bounds.core.config import get_config
from na_bounds.core.errors import MismatchError, config_validation_error, require
from na_bounds.core.sampler import (
    WALK_STREAM,
    GaussianNegCov,
    NAModel,
    block_generator,
    sample_paths_block,
)
from na_bounds.types import BoundFamily, ConvexKind, Statistic
from na_bounds.utils.thread_pool import map_ordered

logger = logging.getLogger(__name__)

MIN_REPS = 1000
CI_LEVEL = 0.95
THREE_SIGMA = 3.0
THREE_SIGMA_TWO_SIDED = 2.0 * stats.norm.sf(THREE_SIGMA)
EXP_OVERFLOW = 700.0
X_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class TailEstimate:
    """
    Estimate of ``P(statistic >= x)`` (or of ``E f`` for ``Expectation``).

    ``ci_low``/``ci_high`` is the 95% interval; the ``_3sigma`` pair is the
    interval used for inequality checks.
    """

    statistic: Statistic
    x: float
    n: int
    p_hat: float
    ci_low: float
    ci_high: float
    ci_low_3sigma: float
    ci_high_3sigma: float
    reps: int
    seed: int
    hits: Optional[int] = None
    std_error: float = 0.0


def clopper_pearson(hits: int, reps: int, level: float = CI_LEVEL) -> Tuple[float, float]:
    """Exact binomial interval at two-sided confidence ``level``."""
    tail = (1.0 - level) / 2.0
    low = 0.0 if hits == 0 else float(stats.beta.ppf(tail, hits, reps - hits + 1))
    high = 1.0 if hits == reps else float(stats.beta.ppf(1.0 - tail, hits + 1, reps - hits))
    return low, high


def three_sigma_interval(hits: int, reps: int) -> Tuple[float, float]:
    """
    ``p_hat +- 3 sigma_hat`` widened to the Clopper-Pearson interval at the
    matching two-sided level, so zero hits still give a positive upper limit.
    """
    p_hat = hits / reps
    half = THREE_SIGMA * math.sqrt(p_hat * (1.0 - p_hat) / reps)
    cp_low, cp_high = clopper_pearson(hits, reps, 1.0 - THREE_SIGMA_TWO_SIDED)
    return max(0.0, min(p_hat - half, cp_low)), min(1.0, max(p_hat + half, cp_high))


def _tail_estimate(statistic: Statistic, x: float, n: int, hits: int, reps: int, seed: int) -> TailEstimate:
    ci_low, ci_high = clopper_pearson(hits, reps)
    low3, high3 = three_sigma_interval(hits, reps)
    p_hat = hits / reps
    return TailEstimate(
        statistic=statistic,
        x=x,
        n=n,
        p_hat=p_hat,
        ci_low=min(ci_low, p_hat),
        ci_high=max(ci_high, p_hat),
        ci_low_3sigma=low3,
        ci_high_3sigma=high3,
        reps=reps,
        seed=seed,
        hits=hits,
        std_error=math.sqrt(p_hat * (1.0 - p_hat) / reps),
    )


def _block_sizes(reps: int, block_size: int) -> List[Tuple[int, int]]:
    """(block_index, size) pairs covering ``reps`` replicates."""
    blocks = []
    for index, start in enumerate(range(0, reps, block_size)):
        blocks.append((index, min(block_size, reps - start)))
    return blocks


def _run_blocks(
    work: Callable[[int, int], Any], reps: int, threads: Optional[int], block_size: Optional[int]
) -> List[Any]:
    config = get_config()
    threads = threads or config.threads
    block_size = block_size or config.block_size
    return map_ordered(lambda blk: work(*blk), _block_sizes(reps, block_size), threads)


def _statistic_values(values: np.ndarray, statistic: Statistic) -> np.ndarray:
    prefix = np.cumsum(values, axis=1)
    if statistic == Statistic.MAX_PREFIX:
        return prefix.max(axis=1)
    return prefix[:, -1]


def estimate_tails(
    model: NAModel,
    xs: Sequence[float],
    reps: int,
    seed: int,
    statistic: Statistic = Statistic.MAX_PREFIX,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
    independent: bool = False,
) -> List[TailEstimate]:
    """Tail estimates at several deviations from one set of replicates."""
    require(reps >= MIN_REPS, "reps", reps, f"reps >= {MIN_REPS}")
    require(
        statistic in (Statistic.MAX_PREFIX, Statistic.FINAL_SUM),
        "statistic",
        statistic.value,
        "MaxPrefix or FinalSum (expectations of f come from convex_comparison)",
    )
    thresholds = np.asarray(xs, dtype=float)

    def work(block_index: int, size: int) -> np.ndarray:
        block = sample_paths_block(model, seed, block_index, size)
        values = block.independent if independent else block.na
        stat = _statistic_values(values, statistic)
        return (stat[:, None] >= thresholds[None, :]).sum(axis=0)

    started = time.perf_counter()
    counts = np.zeros(len(thresholds), dtype=np.int64)
    for block_counts in _run_blocks(work, reps, threads, block_size):
        counts += block_counts
    logger.info(
        f"estimated {statistic.value} tails of {model.describe()} at {len(xs)} points: "
        f"reps={reps}, seed={seed}, {time.perf_counter() - started:.2f}s"
    )
    return [
        _tail_estimate(statistic, float(x), model.n, int(h), reps, seed) for x, h in zip(thresholds, counts)
    ]


def estimate_tail(
    model: NAModel,
    x: float,
    reps: int,
    seed: int,
    statistic: Statistic = Statistic.MAX_PREFIX,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
) -> TailEstimate:
    """Estimate ``P(max_k S_k >= x)`` or ``P(S_n >= x)`` with exact and 3-sigma intervals."""
    return estimate_tails(model, [x], reps, seed, statistic, threads, block_size)[0]


# ---------------------------------------------------------------------------
# Convex comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexTestFunction:
    """
    exponential(t): ``e^{t x}``; shifted_square(a): ``((x - a)^+)^2``;
    identity_plus: ``x^+``.
    """

    kind: ConvexKind
    param: float = 0.0

    def __call__(self, values: np.ndarray) -> np.ndarray:
        if self.kind == ConvexKind.EXPONENTIAL:
            return np.exp(self.param * values)
        if self.kind == ConvexKind.SHIFTED_SQUARE:
            return np.maximum(values - self.param, 0.0) ** 2
        return np.maximum(values, 0.0)

    @property
    def nondecreasing(self) -> bool:
        return self.kind != ConvexKind.EXPONENTIAL or self.param >= 0.0

    @property
    def label(self) -> str:
        if self.kind == ConvexKind.IDENTITY_PLUS:
            return self.kind.value
        return f"{self.kind.value}({self.param:g})"

    @classmethod
    def from_dict(cls, entry: Mapping[str, Any]) -> "ConvexTestFunction":
        try:
            kind = ConvexKind(entry["kind"])
        except (KeyError, ValueError) as e:
            raise config_validation_error("convex_tests.kind", entry.get("kind"), "unknown test function") from e
        key = {"exponential": "t", "shifted_square": "a"}.get(kind.value)
        param = float(entry.get(key, 0.0)) if key else 0.0
        return cls(kind, param)


@dataclass(frozen=True)
class ComparisonReport:
    """Paired estimates of ``E f(S)`` under the NA model and its independent copy."""

    f: ConvexTestFunction
    use_max: bool
    lhs_hat: float
    rhs_hat: float
    diff_hat: float
    diff_se: float
    paired_diff_ci: Tuple[float, float]
    reps: int
    seed: int

    @property
    def threshold(self) -> float:
        return self.rhs_hat + THREE_SIGMA * self.diff_se

    @property
    def passes(self) -> bool:
        return self.lhs_hat <= self.threshold


def convex_comparison(
    model: NAModel,
    f: ConvexTestFunction,
    reps: int,
    seed: int,
    use_max: bool = False,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
) -> ComparisonReport:
    """
    Estimate ``E f(S_n)`` against ``E f(S_n^*)`` (or the running maxima when
    ``use_max`` is set) from paired replicates.

    Raises:
        DomainError: for a decreasing ``f`` with ``use_max``, or when
            ``exp(t x)`` would overflow on the sampled paths.
    """
    require(reps >= MIN_REPS, "reps", reps, f"reps >= {MIN_REPS}")
    if use_max:
        require(f.nondecreasing, "f", f.label, "nondecreasing f for running maxima")
    statistic = Statistic.MAX_PREFIX if use_max else Statistic.FINAL_SUM

    def work(block_index: int, size: int) -> Tuple[float, float, float, float]:
        block = sample_paths_block(model, seed, block_index, size)
        lhs_stat = _statistic_values(block.na, statistic)
        rhs_stat = _statistic_values(block.independent, statistic)
        if f.kind == ConvexKind.EXPONENTIAL:
            peak = f.param * max(float(np.max(lhs_stat)), float(np.max(rhs_stat)))
            require(peak <= EXP_OVERFLOW, "t", f.param, "t * max S below exp overflow")
        lhs, rhs = f(lhs_stat), f(rhs_stat)
        diff = lhs - rhs
        return float(lhs.sum()), float(rhs.sum()), float(diff.sum()), float((diff * diff).sum())

    totals = np.zeros(4)
    for block_sums in _run_blocks(work, reps, threads, block_size):
        totals += np.asarray(block_sums)

    lhs_hat, rhs_hat, diff_hat = totals[0] / reps, totals[1] / reps, totals[2] / reps
    diff_var = max(0.0, totals[3] / reps - diff_hat * diff_hat) * reps / (reps - 1)
    diff_se = math.sqrt(diff_var / reps)
    logger.info(
        f"convex comparison {f.label} ({statistic.value}) on {model.describe()}: "
        f"lhs={lhs_hat:.6g}, rhs={rhs_hat:.6g}, se={diff_se:.3g}"
    )
    return ComparisonReport(
        f=f,
        use_max=use_max,
        lhs_hat=float(lhs_hat),
        rhs_hat=float(rhs_hat),
        diff_hat=float(diff_hat),
        diff_se=diff_se,
        paired_diff_ci=(float(diff_hat - THREE_SIGMA * diff_se), float(diff_hat + THREE_SIGMA * diff_se)),
        reps=reps,
        seed=seed,
    )


def gaussian_exponential_moments(model: GaussianNegCov, t: float) -> Tuple[float, float]:
    """Exact ``(E e^{t S_n}, E e^{t S_n^*}) = (exp{t^2 1'C1/2}, exp{t^2 tr(C)/2})``."""
    cov = model.matrix
    return math.exp(t * t * float(cov.sum()) / 2.0), math.exp(t * t * float(np.trace(cov)) / 2.0)


# ---------------------------------------------------------------------------
# Domination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominationVerdict:
    family: BoundFamily
    dominated: bool
    margin: float
    bound_raw: float
    p_hat: float
    ci_high: float


def bound_statistic(result: BoundResult) -> Statistic:
    """Which statistic a bound controls: the running maximum unless marked otherwise."""
    if result.family == BoundFamily.HOEFFDING_AZUMA:
        return Statistic.FINAL_SUM
    return Statistic(result.chosen_params.get("statistic", Statistic.MAX_PREFIX.value))


def domination_report(bounds: Sequence[BoundResult], estimate: TailEstimate) -> List[DominationVerdict]:
    """
    A bound dominates iff the 3-sigma upper limit of the estimate is at most
    its raw value; ``margin`` is ``raw - p_hat``.

    Raises:
        MismatchError: if a bound was evaluated at another ``x`` or ``n`` or
            controls another statistic than the estimate.
    """
    verdicts = []
    for result in bounds:
        bx = result.inputs.get("x")
        if bx is not None and abs(bx - estimate.x) > X_MATCH_TOL * max(1.0, abs(estimate.x)):
            raise MismatchError("bound and estimate use different x", field="x", expected=estimate.x, actual=bx)
        bn = result.inputs.get("n")
        if bn is not None and bn != estimate.n:
            raise MismatchError("bound and estimate use different n", field="n", expected=estimate.n, actual=bn)
        covered = bound_statistic(result)
        if covered != estimate.statistic:
            raise MismatchError(
                "bound and estimate concern different statistics",
                field="statistic",
                expected=estimate.statistic.value,
                actual=covered.value,
            )
        verdicts.append(
            DominationVerdict(
                family=result.family,
                dominated=estimate.ci_high_3sigma <= result.raw_value,
                margin=result.raw_value - estimate.p_hat,
                bound_raw=result.raw_value,
                p_hat=estimate.p_hat,
                ci_high=estimate.ci_high_3sigma,
            )
        )
    return verdicts


# ---------------------------------------------------------------------------
# Maximal moment of a nonnegative supermartingale
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupermartingaleSpec:
    """
    Exponential Gaussian walk ``T_k = exp{t W_k - k t^2 sigma^2 / 2}`` with
    ``W`` a sum of i.i.d. ``N(0, sigma^2)`` steps; ``E T_1 = 1``.
    """

    t: float
    sigma: float
    n: int
    alpha: float

    def __post_init__(self) -> None:
        require(self.sigma > 0.0, "sigma", self.sigma, "sigma > 0")
        require(self.n >= 1, "n", self.n, "n >= 1")
        require(0.0 < self.alpha < 1.0, "alpha", self.alpha, "0 < alpha < 1")

    @property
    def mean_t1(self) -> float:
        return 1.0

    @classmethod
    def from_dict(cls, entry: Mapping[str, Any]) -> "SupermartingaleSpec":
        try:
            return cls(float(entry["t"]), float(entry.get("sigma", 1.0)), int(entry["n"]), float(entry["alpha"]))
        except KeyError as e:
            raise config_validation_error(f"run.supermartingale.{e.args[0]}", None, "required") from e


@dataclass(frozen=True)
class SupermartingaleReport:
    spec: SupermartingaleSpec
    lhs_hat: float
    lhs_se: float
    rhs_exact: float

    @property
    def passes(self) -> bool:
        return self.lhs_hat + THREE_SIGMA * self.lhs_se <= self.rhs_exact


def supermartingale_max_moment(
    spec: SupermartingaleSpec,
    reps: int,
    seed: int,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
) -> SupermartingaleReport:
    """Estimate ``E max_k T_k^alpha`` against ``(E T_1)^alpha / (1 - alpha)``."""
    require(reps >= MIN_REPS, "reps", reps, f"reps >= {MIN_REPS}")
    k = np.arange(1, spec.n + 1)

    def work(block_index: int, size: int) -> Tuple[float, float]:
        rng = block_generator(seed, WALK_STREAM, block_index)
        walk = np.cumsum(spec.sigma * rng.standard_normal((size, spec.n)), axis=1)
        log_t = spec.t * walk - k * spec.t**2 * spec.sigma**2 / 2.0
        v = np.exp(spec.alpha * log_t.max(axis=1))
        return float(v.sum()), float((v * v).sum())

    total, total_sq = 0.0, 0.0
    for s, s2 in _run_blocks(work, reps, threads, block_size):
        total, total_sq = total + s, total_sq + s2
    mean = total / reps
    se = math.sqrt(max(0.0, total_sq / reps - mean * mean) / (reps - 1))
    rhs = spec.mean_t1**spec.alpha / (1.0 - spec.alpha)
    logger.info(f"supermartingale maximal moment: lhs={mean:.6g} (se {se:.3g}), rhs={rhs:.6g}")
    return SupermartingaleReport(spec=spec, lhs_hat=mean, lhs_se=se, rhs_exact=rhs)

