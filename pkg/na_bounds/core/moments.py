"""
Moment functionals of the marginal laws consumed by the tail bounds.

Each law in the closed catalog below computes its functionals by closed form
where one exists and by adaptive quadrature (``scipy.integrate.quad``)
otherwise. Functionals that are infinite for a law raise
``MomentDivergenceError``; ``moment_summary`` records such functionals as
divergent instead of storing an infinite value.
"""

import logging
import math
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Callable, ClassVar, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special, stats

from na_bounds.core.bounds import BoundedRangeSpec
from na_bounds.core.config import get_config
from na_bounds.core.errors import (
    DomainError,
    MomentDivergenceError,
    config_validation_error,
    divergence_error,
    require,
)
from na_bounds.core.transforms import golden_section_search
from na_bounds.types import DistributionKind

logger = logging.getLogger(__name__)

PROB_TOL = 1e-12
WEAK_NORM_LOW = 1e-6
WEAK_NORM_HIGH = 1e3
LOG_FLOAT_MAX = float(np.log(np.finfo(float).max))


class DistributionSpec(ABC):
    """A marginal law from the closed catalog.

    ``centered`` asserts ``E X = 0``; it is checked on construction and set by
    :meth:`centered_version`.
    """

    kind: ClassVar[DistributionKind]
    centered: bool

    def _check_centering(self) -> None:
        if self.centered and abs(self.mean()) > PROB_TOL:
            raise DomainError(
                f"{self.describe()} is flagged centered but has mean {self.mean()!r}",
                parameter="centered",
                value=self.mean(),
                constraint="|E X| <= 1e-12",
            )

    @abstractmethod
    def describe(self) -> str:
        """Short label used in diagnostics and divergence reasons."""

    @abstractmethod
    def centered_version(self) -> "DistributionSpec":
        """The law of ``X - E X``, flagged centered."""

    @property
    @abstractmethod
    def support(self) -> Tuple[float, float]:
        """Smallest closed interval carrying the law (ends may be infinite)."""

    @property
    def is_bounded(self) -> bool:
        lo, hi = self.support
        return math.isfinite(lo) and math.isfinite(hi)

    @property
    def ess_sup_abs(self) -> float:
        lo, hi = self.support
        return max(abs(lo), abs(hi))

    @abstractmethod
    def mean(self) -> float: ...

    @abstractmethod
    def raw_moment(self, k: int) -> float:
        """E X^k."""

    @abstractmethod
    def abs_moment(self, p: float) -> float:
        """E |X|^p."""

    @abstractmethod
    def truncated_second_moment(self, y: float) -> float:
        """E[X^2 1{X <= y}] (one-sided truncation)."""

    @abstractmethod
    def prob_greater(self, x: float) -> float:
        """P(X > x)."""

    def prob_abs_greater(self, x: float) -> float:
        """P(|X| > x) for ``x >= 0``."""
        return self.prob_greater(x) + self.prob_less(-x)

    @abstractmethod
    def prob_less(self, x: float) -> float:
        """P(X < x)."""

    @abstractmethod
    def semi_exp_moment(self, p: float) -> float:
        """E[X^2 exp{|X|^p}]."""

    @abstractmethod
    def exp_moment(self, a: float, p: float) -> float:
        """E[exp{a |X|^p}]."""

    @abstractmethod
    def weak_norm_p(self, p: float) -> float:
        """sup_{x>0} x^p P(|X| > x)."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray: ...


# ---------------------------------------------------------------------------
# Discrete laws
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Atoms(DistributionSpec):
    """Shared machinery for laws with finitely many atoms."""

    @property
    @abstractmethod
    def atoms(self) -> Tuple[np.ndarray, np.ndarray]:
        """(values, probabilities)."""

    @property
    def support(self) -> Tuple[float, float]:
        values, _ = self.atoms
        return float(values.min()), float(values.max())

    def _expect(self, fn: Callable[[np.ndarray], np.ndarray]) -> float:
        values, probs = self.atoms
        return math.fsum(fn(values) * probs)

    def mean(self) -> float:
        return self._expect(lambda v: v)

    def raw_moment(self, k: int) -> float:
        return self._expect(lambda v: v**k)

    def abs_moment(self, p: float) -> float:
        return self._expect(lambda v: np.abs(v) ** p)

    def truncated_second_moment(self, y: float) -> float:
        require(y > 0.0, "y", y, "y > 0")
        return self._expect(lambda v: np.where(v <= y, v * v, 0.0))

    def prob_greater(self, x: float) -> float:
        return self._expect(lambda v: (v > x).astype(float))

    def prob_less(self, x: float) -> float:
        return self._expect(lambda v: (v < x).astype(float))

    def _log_space_expect(self, functional: str, log_terms: np.ndarray, mask: np.ndarray) -> float:
        """``sum_j q_j exp(log_terms_j)`` over the masked atoms, via ``logsumexp``."""
        _, probs = self.atoms
        mask = mask & (probs > 0.0)
        if not mask.any():
            return 0.0
        log_value = float(special.logsumexp(log_terms[mask], b=probs[mask]))
        if not log_value < LOG_FLOAT_MAX:
            reason = f"log of the sum is {log_value:.6g}, beyond float range"
            raise divergence_error(functional, self.describe(), reason)
        return math.exp(log_value)

    def semi_exp_moment(self, p: float) -> float:
        values, _ = self.atoms
        abs_values = np.abs(values)
        nonzero = abs_values > 0.0
        with np.errstate(divide="ignore"):
            log_terms = 2.0 * np.log(abs_values) + abs_values**p
        return self._log_space_expect(f"E[X^2 exp(|X|^{p})]", log_terms, nonzero)

    def exp_moment(self, a: float, p: float) -> float:
        values, _ = self.atoms
        log_terms = a * np.abs(values) ** p
        return self._log_space_expect(f"E exp({a}|X|^{p})", log_terms, np.ones(values.shape, dtype=bool))

    def weak_norm_p(self, p: float) -> float:
        # the supremum is approached from the left of each atom of |X|
        require(p >= 1.0, "p", p, "p >= 1")
        values, probs = self.atoms
        abs_values = np.abs(values)
        best = 0.0
        for level in np.unique(abs_values[abs_values > 0.0]):
            mass = math.fsum(probs[abs_values >= level])
            best = max(best, float(level) ** p * mass)
        return best

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        values, probs = self.atoms
        return rng.choice(values, size=size, p=probs)


@dataclass(frozen=True)
class BoundedDiscrete(_Atoms):
    support_points: Tuple[Tuple[float, float], ...]
    centered: bool = field(default=False, kw_only=True)

    kind: ClassVar[DistributionKind] = DistributionKind.BOUNDED_DISCRETE

    def __post_init__(self) -> None:
        points = tuple((float(v), float(q)) for v, q in self.support_points)
        object.__setattr__(self, "support_points", points)
        require(len(points) >= 1, "support", len(points), "at least one atom")
        for v, q in points:
            require(q >= 0.0, "prob", q, "probabilities >= 0")
            require(math.isfinite(v), "value", v, "finite atoms")
        total = math.fsum(q for _, q in points)
        require(abs(total - 1.0) <= PROB_TOL, "probs", total, "probabilities sum to 1 within 1e-12")
        self._check_centering()

    @property
    def atoms(self) -> Tuple[np.ndarray, np.ndarray]:
        values = np.array([v for v, _ in self.support_points])
        probs = np.array([q for _, q in self.support_points])
        return values, probs

    def describe(self) -> str:
        return f"bounded_discrete({len(self.support_points)} atoms)"

    def centered_version(self) -> "BoundedDiscrete":
        mu = self.mean()
        return BoundedDiscrete(tuple((v - mu, q) for v, q in self.support_points), centered=True)


@dataclass(frozen=True)
class FinitePopulationValue(_Atoms):
    """One draw from a finite population, every unit equally likely."""

    population: Tuple[float, ...]
    centered: bool = field(default=False, kw_only=True)

    kind: ClassVar[DistributionKind] = DistributionKind.FINITE_POPULATION_VALUE

    def __post_init__(self) -> None:
        object.__setattr__(self, "population", tuple(float(v) for v in self.population))
        require(len(self.population) >= 1, "population", len(self.population), "nonempty population")
        self._check_centering()

    @property
    def atoms(self) -> Tuple[np.ndarray, np.ndarray]:
        values = np.asarray(self.population)
        return values, np.full(values.shape, 1.0 / values.size)

    def mean(self) -> float:
        return math.fsum(self.population) / len(self.population)

    def describe(self) -> str:
        return f"finite_population_value(N={len(self.population)})"

    def centered_version(self) -> "FinitePopulationValue":
        mu = self.mean()
        return FinitePopulationValue(tuple(v - mu for v in self.population), centered=True)


# ---------------------------------------------------------------------------
# Continuous laws
# ---------------------------------------------------------------------------


class _Continuous(DistributionSpec):
    """Quadrature-based functionals over a scipy frozen distribution."""

    @abstractmethod
    def _rv(self) -> Any: ...

    @property
    @abstractmethod
    def scale(self) -> float:
        """Natural length scale; sets the span of the weak-norm grid."""

    def _quad(
        self, functional: str, log_integrand: Callable[[float], float], lower: float, upper: float
    ) -> float:
        """Integrate ``exp(log_integrand)`` over ``[lower, upper]``, split at 0."""
        rel_tol = get_config().quad_rel_tol
        pieces = []
        if lower < 0.0 < upper:
            pieces = [(lower, 0.0), (0.0, upper)]
        elif lower < upper:
            pieces = [(lower, upper)]
        total = 0.0
        for lo, hi in pieces:
            try:
                value, err = integrate.quad(
                    lambda t: math.exp(log_integrand(t)), lo, hi, epsrel=rel_tol, epsabs=0.0, limit=200
                )
            except OverflowError as e:
                reason = f"integrand overflows on [{lo}, {hi}]"
                raise divergence_error(functional, self.describe(), reason) from e
            logger.debug(f"quad over [{lo}, {hi}] for {self.describe()}: {value} (err {err})")
            total += value
        if not math.isfinite(total):
            raise divergence_error(functional, self.describe(), f"quadrature returned {total}")
        return total

    def _log_pdf(self, t: float) -> float:
        return float(self._rv().logpdf(t))

    def _abs_power_expect(self, p: float, lower: float, upper: float) -> float:
        def log_integrand(t: float) -> float:
            if t == 0.0:
                return -math.inf
            return p * math.log(abs(t)) + self._log_pdf(t)

        return self._quad(f"E|X|^{p}", log_integrand, lower, upper)

    def raw_moment(self, k: int) -> float:
        require(k >= 0, "k", k, "k >= 0")
        return float(self._rv().moment(k))

    def abs_moment(self, p: float) -> float:
        require(p > 0.0, "p", p, "p > 0")
        lo, hi = self.support
        return self._abs_power_expect(p, lo, hi)

    def prob_greater(self, x: float) -> float:
        return float(self._rv().sf(x))

    def prob_less(self, x: float) -> float:
        return float(self._rv().cdf(x))

    def semi_exp_moment(self, p: float) -> float:
        require(p > 0.0, "p", p, "p > 0")
        lo, hi = self.support

        def log_integrand(t: float) -> float:
            if t == 0.0:
                return -math.inf
            return 2.0 * math.log(abs(t)) + abs(t) ** p + self._log_pdf(t)

        return self._quad(f"E[X^2 exp(|X|^{p})]", log_integrand, lo, hi)

    def exp_moment(self, a: float, p: float) -> float:
        require(a > 0.0, "a", a, "a > 0")
        require(p > 0.0, "p", p, "p > 0")
        lo, hi = self.support
        return self._quad(f"E exp({a}|X|^{p})", lambda t: a * abs(t) ** p + self._log_pdf(t), lo, hi)

    def weak_norm_p(self, p: float) -> float:
        """
        Dense log grid over ``[1e-6 scale, 1e3 scale]`` refined by golden-section
        search around the best grid point.

        Raises:
            MomentDivergenceError: if the maximum sits on the last grid point and
                is still increasing there.
        """
        require(p >= 1.0, "p", p, "p >= 1")
        grid_size = get_config().weak_norm_grid
        grid = np.geomspace(WEAK_NORM_LOW * self.scale, WEAK_NORM_HIGH * self.scale, grid_size)
        values = grid**p * (self._rv().sf(grid) + self._rv().cdf(-grid))
        i = int(np.argmax(values))
        if i == grid_size - 1 and values[-1] > values[-2]:
            raise divergence_error(f"weak_norm_p(p={p})", self.describe(), "x^p P(|X|>x) still increasing")

        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid_size - 1)]
        refined = golden_section_search(
            lambda s: math.exp(s) ** p * self.prob_abs_greater(math.exp(s)),
            math.log(lo),
            math.log(hi),
            tol=1e-12,
            maximize=True,
        )
        return max(float(values[i]), refined.value)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.asarray(self._rv().rvs(size=size, random_state=rng))


@dataclass(frozen=True)
class Uniform(_Continuous):
    a: float
    b: float
    centered: bool = field(default=False, kw_only=True)

    kind: ClassVar[DistributionKind] = DistributionKind.UNIFORM

    def __post_init__(self) -> None:
        require(self.a < self.b, "a", (self.a, self.b), "a < b")
        self._check_centering()

    def _rv(self) -> Any:
        return stats.uniform(loc=self.a, scale=self.b - self.a)

    @property
    def support(self) -> Tuple[float, float]:
        return float(self.a), float(self.b)

    @property
    def scale(self) -> float:
        return self.ess_sup_abs

    def describe(self) -> str:
        return f"uniform(a={self.a}, b={self.b})"

    def centered_version(self) -> "Uniform":
        mu = self.mean()
        return Uniform(self.a - mu, self.b - mu, centered=True)

    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def raw_moment(self, k: int) -> float:
        require(k >= 0, "k", k, "k >= 0")
        return (self.b ** (k + 1) - self.a ** (k + 1)) / ((k + 1) * (self.b - self.a))

    def abs_moment(self, p: float) -> float:
        require(p > 0.0, "p", p, "p > 0")
        a, b = self.a, self.b
        if a >= 0.0:
            mass = b ** (p + 1) - a ** (p + 1)
        elif b <= 0.0:
            mass = abs(a) ** (p + 1) - abs(b) ** (p + 1)
        else:
            mass = abs(a) ** (p + 1) + b ** (p + 1)
        return mass / ((p + 1) * (b - a))

    def truncated_second_moment(self, y: float) -> float:
        require(y > 0.0, "y", y, "y > 0")
        if y <= self.a:
            return 0.0
        top = min(y, self.b)
        return (top**3 - self.a**3) / (3.0 * (self.b - self.a))


class _Gaussian(_Continuous):
    sigma: float

    @property
    def scale(self) -> float:
        return float(self.sigma)

    def mean(self) -> float:
        return 0.0

    def _second_moment_between(self, lower: float, upper: float) -> float:
        """int_lower^upper t^2 phi(t/sigma)/sigma dt via [Phi(u) - u phi(u)]."""

        def primitive(u: float) -> float:
            if math.isinf(u):
                return 1.0 if u > 0 else 0.0
            return float(stats.norm.cdf(u) - u * stats.norm.pdf(u))

        s = self.sigma
        return s * s * (primitive(upper / s) - primitive(lower / s))


@dataclass(frozen=True)
class CenteredGaussian(_Gaussian):
    sigma: float
    centered: bool = field(default=True, kw_only=True)

    kind: ClassVar[DistributionKind] = DistributionKind.CENTERED_GAUSSIAN

    def __post_init__(self) -> None:
        require(self.sigma > 0.0, "sigma", self.sigma, "sigma > 0")

    def _rv(self) -> Any:
        return stats.norm(scale=self.sigma)

    @property
    def support(self) -> Tuple[float, float]:
        return -math.inf, math.inf

    def describe(self) -> str:
        return f"centered_gaussian(sigma={self.sigma})"

    def centered_version(self) -> "CenteredGaussian":
        return replace(self, centered=True)

    def raw_moment(self, k: int) -> float:
        require(k >= 0, "k", k, "k >= 0")
        if k % 2:
            return 0.0
        return float(self.sigma**k * special.factorial2(k - 1, exact=True)) if k else 1.0

    def abs_moment(self, p: float) -> float:
        require(p > 0.0, "p", p, "p > 0")
        return self.sigma**p * 2.0 ** (p / 2.0) * math.gamma((p + 1.0) / 2.0) / math.sqrt(math.pi)

    def truncated_second_moment(self, y: float) -> float:
        require(y > 0.0, "y", y, "y > 0")
        return self._second_moment_between(-math.inf, y)

    def exp_moment(self, a: float, p: float) -> float:
        require(a > 0.0, "a", a, "a > 0")
        require(p > 0.0, "p", p, "p > 0")
        if p > 2.0:
            raise divergence_error(f"E exp(a|X|^{p})", self.describe(), "p > 2 against a Gaussian tail")
        if p == 2.0:
            if a >= 1.0 / (2.0 * self.sigma**2):
                raise divergence_error(
                    "E exp(a|X|^2)", self.describe(), f"a={a} >= 1/(2 sigma^2)"
                )
            return 1.0 / math.sqrt(1.0 - 2.0 * a * self.sigma**2)
        return super().exp_moment(a, p)


@dataclass(frozen=True)
class TruncatedCenteredGaussian(_Gaussian):
    """Centered normal conditioned on ``|X| <= cut``."""

    sigma: float
    cut: float
    centered: bool = field(default=True, kw_only=True)

    kind: ClassVar[DistributionKind] = DistributionKind.TRUNCATED_CENTERED_GAUSSIAN

    def __post_init__(self) -> None:
        require(self.sigma > 0.0, "sigma", self.sigma, "sigma > 0")
        require(self.cut > 0.0, "cut", self.cut, "cut > 0")

    def _rv(self) -> Any:
        z = self.cut / self.sigma
        return stats.truncnorm(-z, z, scale=self.sigma)

    @property
    def support(self) -> Tuple[float, float]:
        return -float(self.cut), float(self.cut)

    def describe(self) -> str:
        return f"truncated_centered_gaussian(sigma={self.sigma}, cut={self.cut})"

    def centered_version(self) -> "TruncatedCenteredGaussian":
        return replace(self, centered=True)

    def truncated_second_moment(self, y: float) -> float:
        require(y > 0.0, "y", y, "y > 0")
        z = self.cut / self.sigma
        mass = float(stats.norm.cdf(z) - stats.norm.cdf(-z))
        return self._second_moment_between(-self.cut, min(y, self.cut)) / mass


# ---------------------------------------------------------------------------
# Catalog-level functionals
# ---------------------------------------------------------------------------


def _grouped(dists: Sequence[DistributionSpec]) -> Counter:
    require(len(dists) >= 1, "dists", len(dists), "nonempty distribution list")
    return Counter(dists)


def _sum_over(dists: Sequence[DistributionSpec], fn: Callable[[DistributionSpec], float]) -> float:
    return math.fsum(count * fn(d) for d, count in _grouped(dists).items())


def truncated_second_moment(dist: DistributionSpec, y: float) -> float:
    return dist.truncated_second_moment(y)


def weak_norm_p(dist: DistributionSpec, p: float) -> float:
    return dist.weak_norm_p(p)


def upper_tail_sum(dists: Sequence[DistributionSpec], y: float) -> float:
    """sum_i P(X_i > y): the overflow term of the Fuk-Nagaev bounds."""
    return _sum_over(dists, lambda d: d.prob_greater(y))


@dataclass(frozen=True)
class BernsteinReport:
    holds: bool
    worst_k: int
    worst_ratio: float
    ratios: Dict[int, float]
    certified_through: int
    certifies_all_k: bool


def bernstein_condition_check(dists: Sequence[DistributionSpec], M: float, k_max: int) -> BernsteinReport:
    """
    Check ``|sum_i E X_i^k| <= k! M^{k-2} B_n / 2`` for ``k = 2..k_max``.

    The k = 2 ratio is exactly one. ``certifies_all_k`` is set only for bounded
    laws with ``M`` at or above the certificate of :func:`smallest_bernstein_M`.
    """
    require(M > 0.0, "M", M, "M > 0")
    require(k_max >= 2, "k_max", k_max, "k_max >= 2")
    b_n = _sum_over(dists, lambda d: d.raw_moment(2))
    require(b_n > 0.0, "B_n", b_n, "B_n > 0")

    ratios: Dict[int, float] = {}
    for k in range(2, k_max + 1):
        moment = abs(_sum_over(dists, lambda d: d.raw_moment(k)))
        ratios[k] = moment / (0.5 * math.factorial(k) * M ** (k - 2) * b_n)
    ratios[2] = 1.0
    worst_k = max(ratios, key=lambda k: (ratios[k], -k))
    holds = ratios[worst_k] <= 1.0 + PROB_TOL

    all_bounded = all(d.is_bounded for d in dists)
    certifies_all = holds and all_bounded and M >= _tail_certificate(dists, k_max) * (1.0 - PROB_TOL)
    return BernsteinReport(
        holds=holds,
        worst_k=worst_k,
        worst_ratio=ratios[worst_k],
        ratios=ratios,
        certified_through=k_max,
        certifies_all_k=certifies_all,
    )


def _tail_certificate(dists: Sequence[DistributionSpec], k_max: int) -> float:
    c = max(d.ess_sup_abs for d in dists)
    k = k_max + 1
    return c * (2.0 / math.factorial(k)) ** (1.0 / (k - 2))


def smallest_bernstein_M(dists: Sequence[DistributionSpec], k_max: int) -> float:
    """
    Smallest ``M`` satisfying the Bernstein condition for every ``k >= 2``.

    Orders 3..k_max are checked exactly; orders beyond ``k_max`` are covered by
    ``|E X^k| <= c^{k-2} E X^2`` with ``c = max ess sup |X_i|``.
    """
    require(k_max >= 2, "k_max", k_max, "k_max >= 2")
    for d in dists:
        if not d.is_bounded:
            raise divergence_error("bernstein_M", d.describe(), "unbounded support, orders above k_max not certified")
    b_n = _sum_over(dists, lambda d: d.raw_moment(2))
    require(b_n > 0.0, "B_n", b_n, "B_n > 0")

    m = _tail_certificate(dists, k_max)
    for k in range(3, k_max + 1):
        moment = abs(_sum_over(dists, lambda d: d.raw_moment(k)))
        m = max(m, (moment / (0.5 * math.factorial(k) * b_n)) ** (1.0 / (k - 2)))
    return m


@dataclass
class MomentSummary:
    """Aggregated functionals of a list of marginal laws.

    Divergent or inapplicable functionals are ``None`` with the reason in
    ``divergent``. The ``*_at`` methods recompute for other parameters.
    """

    dists: Tuple[DistributionSpec, ...]
    n: int
    B_n: float
    B_n_of_y: Dict[float, float]
    p_fuk: float
    p_semi: float
    p_exp: float
    a: float
    V_n: Optional[float] = None
    A_p: Optional[float] = None
    K_n: Optional[float] = None
    K_exp: Optional[float] = None
    bernstein_M: Optional[float] = None
    range: Optional[BoundedRangeSpec] = None
    divergent: Dict[str, str] = field(default_factory=dict)

    def b_n_at(self, y: float) -> float:
        cached = self.B_n_of_y.get(float(y))
        if cached is not None:
            return cached
        return _sum_over(self.dists, lambda d: d.truncated_second_moment(y))

    def tail_sum_at(self, y: float) -> float:
        return upper_tail_sum(self.dists, y)

    def v_n_at(self, p: float) -> float:
        return _sum_over(self.dists, lambda d: d.abs_moment(p))

    def a_p_at(self, p: float) -> float:
        return _sum_over(self.dists, lambda d: d.weak_norm_p(p))

    def k_n_at(self, p: float) -> float:
        return self._finite("K_n", _sum_over(self.dists, lambda d: d.semi_exp_moment(p)))

    def k_exp_at(self, a: float, p: float) -> float:
        return self._finite("K_exp", _sum_over(self.dists, lambda d: d.exp_moment(a, p)))

    def _finite(self, name: str, value: float) -> float:
        if not math.isfinite(value):
            raise divergence_error(name, f"{self.n} laws", f"sum over the laws is {value}")
        return value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "B_n": self.B_n,
            "V_n": self.V_n,
            "A_p": self.A_p,
            "K_n": self.K_n,
            "K_exp": self.K_exp,
            "bernstein_M": self.bernstein_M,
            "D": self.range.d if self.range else None,
            "M2": self.range.m2 if self.range else None,
            "Delta": self.range.delta if self.range else None,
            "divergent": dict(self.divergent),
        }


def moment_summary(
    dists: Sequence[DistributionSpec],
    p_fuk: float = 4.0,
    p_semi: float = 0.5,
    p_exp: float = 2.0,
    a: float = 0.1,
    y_grid: Iterable[float] = (),
    k_max: Optional[int] = None,
) -> MomentSummary:
    """Populate every functional by summing per-law values over ``dists``."""
    require(len(dists) >= 1, "dists", len(dists), "nonempty distribution list")
    require(p_fuk >= 2.0, "p_fuk", p_fuk, "p >= 2")
    require(0.0 < p_semi < 1.0, "p_semi", p_semi, "0 < p < 1")
    require(p_exp > 1.0, "p_exp", p_exp, "p > 1")
    require(a > 0.0, "a", a, "a > 0")
    k_max = k_max if k_max is not None else get_config().k_max

    dists = tuple(dists)
    summary = MomentSummary(
        dists=dists,
        n=len(dists),
        B_n=_sum_over(dists, lambda d: d.raw_moment(2)),
        B_n_of_y={},
        p_fuk=p_fuk,
        p_semi=p_semi,
        p_exp=p_exp,
        a=a,
    )
    summary.B_n_of_y = {float(y): summary.b_n_at(float(y)) for y in y_grid}

    def attempt(name: str, compute: Callable[[], float]) -> Optional[float]:
        try:
            value = compute()
            if not math.isfinite(value):
                raise divergence_error(name, f"{summary.n} laws", f"sum over the laws is {value}")
            return value
        except MomentDivergenceError as e:
            summary.divergent[name] = e.message
            logger.debug(f"moment functional {name} diverges: {e.message}")
            return None

    summary.V_n = attempt("V_n", lambda: summary.v_n_at(p_fuk))
    summary.A_p = attempt("A_p", lambda: summary.a_p_at(p_fuk))
    summary.K_n = attempt("K_n", lambda: summary.k_n_at(p_semi))
    summary.K_exp = attempt("K_exp", lambda: summary.k_exp_at(a, p_exp))
    summary.bernstein_M = attempt("bernstein_M", lambda: smallest_bernstein_M(dists, k_max))

    if all(d.is_bounded for d in dists):
        summary.range = BoundedRangeSpec(
            lower=tuple(d.support[0] for d in dists),
            upper=tuple(d.support[1] for d in dists),
        )
    else:
        summary.divergent["range"] = "unbounded support"
    return summary


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _build_distribution(kind: DistributionKind, entry: Mapping[str, Any]) -> DistributionSpec:
    if kind == DistributionKind.BOUNDED_DISCRETE:
        return BoundedDiscrete(tuple(tuple(pair) for pair in entry["support"]))
    if kind == DistributionKind.UNIFORM:
        return Uniform(float(entry["a"]), float(entry["b"]))
    if kind == DistributionKind.CENTERED_GAUSSIAN:
        return CenteredGaussian(float(entry["sigma"]))
    if kind == DistributionKind.TRUNCATED_CENTERED_GAUSSIAN:
        return TruncatedCenteredGaussian(float(entry["sigma"]), float(entry["cut"]))
    return FinitePopulationValue(tuple(entry["population"]))


def distribution_from_dict(entry: Mapping[str, Any]) -> List[DistributionSpec]:
    """
    Parse one ``distributions`` entry into ``count`` copies of a law.

    ``center: true`` replaces the law by that of ``X - E X``.
    """
    try:
        kind = DistributionKind(entry["kind"])
    except (KeyError, ValueError) as e:
        raise config_validation_error("distributions.kind", entry.get("kind"), "unknown distribution kind") from e

    count = entry.get("count", 1)
    if not isinstance(count, int) or count < 1:
        raise config_validation_error("distributions.count", count, "must be a positive integer")

    try:
        dist = _build_distribution(kind, entry)
    except KeyError as e:
        raise config_validation_error(f"distributions.{e.args[0]}", None, f"required for {kind.value}") from e
    except (TypeError, ValueError) as e:
        raise config_validation_error(f"distributions[{kind.value}]", dict(entry), str(e)) from e

    if entry.get("center", False):
        dist = dist.centered_version()
    return [dist] * count
