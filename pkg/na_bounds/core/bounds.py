"""
Closed-form deviation bounds for maxima of partial sums of negatively
associated random variables.

Every evaluator is a pure function of the deviation ``x``, its free parameters
(``alpha``, ``y``, ``t``) and the moment functionals it consumes. Bounds that
carry a free ``alpha`` use the maximal-moment device that costs a factor
``(1 - alpha)^{-1}``; with ``alpha = 1/2`` they reduce to the familiar
"factor 2" statements.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from na_bounds.core.errors import ConvergenceError, DegenerateInputError, require
from na_bounds.core.transforms import ScalarFunction, golden_section_search
from na_bounds.types import (
    BernsteinForm,
    BoundFamily,
    Convexity,
    FukNagaevVariant,
    RioForm,
    SemiExpForm,
)

logger = logging.getLogger(__name__)

ELL_SERIES_CUTOFF = 1e-3
ELL_PRIME_SERIES_CUTOFF = 1e-2
EXP_OVERFLOW = 709.0


def _exp(v: float) -> float:
    """exp that saturates to inf instead of raising OverflowError."""
    return math.exp(v) if v < EXP_OVERFLOW else math.inf


def _check_alpha(alpha: float) -> None:
    require(0.0 < alpha < 1.0, "alpha", alpha, "0 < alpha < 1")


@dataclass(frozen=True)
class GaussianFamilyArgs:
    """Arguments of the functions H_n, B and B_1."""

    x: float
    v: float
    n: int
    alpha: float

    def __post_init__(self) -> None:
        require(self.x >= 0.0, "x", self.x, "x >= 0")
        require(self.v > 0.0, "v", self.v, "v > 0")
        require(self.n >= 1, "n", self.n, "n >= 1")
        _check_alpha(self.alpha)


@dataclass(frozen=True)
class BoundResult:
    """A bound value together with everything needed to reproduce it."""

    family: BoundFamily
    inputs: Dict[str, Any]
    chosen_params: Dict[str, Any]
    raw_value: float
    clipped_value: float
    flags: Tuple[str, ...] = ()

    @classmethod
    def build(
        cls,
        family: BoundFamily,
        raw_value: float,
        inputs: Dict[str, Any],
        chosen_params: Optional[Dict[str, Any]] = None,
        flags: Tuple[str, ...] = (),
    ) -> "BoundResult":
        raw = max(0.0, float(raw_value))
        return cls(
            family=family,
            inputs=dict(inputs),
            chosen_params=dict(chosen_params or {}),
            raw_value=raw,
            clipped_value=min(1.0, raw),
            flags=flags,
        )

    def scaled(self, factor: float) -> "BoundResult":
        """Same result with the raw value multiplied by ``factor``."""
        return BoundResult.build(
            self.family,
            self.raw_value * factor,
            self.inputs,
            self.chosen_params,
            self.flags + (f"scaled:{factor!r}",),
        )


@dataclass(frozen=True)
class ExpMomentConstants:
    """Constants of the exponential-moment bounds.

    ``tau`` and ``a1`` solve ``(q tau)^{1/q} (p a)^{1/p} = 1`` and
    ``(q tau1)^{1/q} (p a1)^{1/p} = 1``; ``c`` is ``K (2/a)^{1/(p-1)}``.
    """

    p: float
    q: float
    a: float
    K: float
    tau: float
    tau1: float
    t1: float
    x1: float
    A: float
    B: float
    a1: float
    K1: float
    c: float


@dataclass(frozen=True)
class BoundedRangeSpec:
    """Almost-sure ranges ``m_i <= X_i <= M_i`` of a bounded sequence."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    widths: Tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        require(len(self.lower) == len(self.upper), "range", (len(self.lower), len(self.upper)), "len(lower) == len(upper)")
        require(len(self.lower) >= 1, "range", len(self.lower), "n >= 1")
        for i, (m, M) in enumerate(zip(self.lower, self.upper)):
            require(m <= M, f"range[{i}]", (m, M), "m_i <= M_i")
        object.__setattr__(self, "lower", tuple(float(m) for m in self.lower))
        object.__setattr__(self, "upper", tuple(float(M) for M in self.upper))
        object.__setattr__(
            self, "widths", tuple(M - m for m, M in zip(self.lower, self.upper))
        )

    @classmethod
    def uniform(cls, n: int, lower: float, upper: float) -> "BoundedRangeSpec":
        return cls(lower=(lower,) * n, upper=(upper,) * n)

    @property
    def n(self) -> int:
        return len(self.widths)

    @property
    def m2(self) -> float:
        """M^2(n), the sum of squared widths."""
        return math.fsum(w * w for w in self.widths)

    @property
    def d(self) -> float:
        """D(n), the sum of widths."""
        return math.fsum(self.widths)

    @property
    def delta(self) -> float:
        """Delta(n), the largest width."""
        return max(self.widths)

    def shifted(self, means: Sequence[float]) -> "BoundedRangeSpec":
        """Ranges of ``X_i - E X_i``; the widths are unchanged."""
        require(len(means) == self.n, "means", len(means), f"len(means) == {self.n}")
        return BoundedRangeSpec(
            lower=tuple(m - mu for m, mu in zip(self.lower, means)),
            upper=tuple(M - mu for M, mu in zip(self.upper, means)),
        )


# ---------------------------------------------------------------------------
# Gaussian-family functions H_n, B, B_1
# ---------------------------------------------------------------------------


def fuk_nagaev_h(x: float, v: float, n: int, alpha: float) -> float:
    """
    H_n(x, v) with ``alpha`` in the outer exponent ``alpha n / (n + v^2)``.

    ``x = n`` uses the convention ``(+inf)^0 = 1`` on the second factor and
    ``x > n`` returns 0.
    """
    GaussianFamilyArgs(x=x, v=v, n=n, alpha=alpha)
    v2 = v * v
    if x > n:
        return 0.0
    if x == n:
        return _exp(alpha * n * -math.log1p(n / v2))
    log_inner = (x + v2) * -math.log1p(x / v2) + (n - x) * -math.log1p(-x / n)
    return _exp(alpha * n / (n + v2) * log_inner)


def bennett_b(x: float, v: float, alpha: float) -> float:
    """B(x, v) = (v^2/(x+v^2))^{alpha (x+v^2)} e^{alpha x}."""
    require(x >= 0.0, "x", x, "x >= 0")
    require(v > 0.0, "v", v, "v > 0")
    _check_alpha(alpha)
    v2 = v * v
    return _exp(alpha * ((x + v2) * -math.log1p(x / v2) + x))


def bernstein_b1(x: float, v: float, alpha: float) -> float:
    """B_1(x, v) = exp{-alpha x^2 / (2 (v^2 + x/3))}."""
    require(x >= 0.0, "x", x, "x >= 0")
    require(v > 0.0, "v", v, "v > 0")
    _check_alpha(alpha)
    return math.exp(-alpha * x * x / (2.0 * (v * v + x / 3.0)))


# ---------------------------------------------------------------------------
# Fuk-Nagaev, weak-moment and Fuk p-th moment bounds
# ---------------------------------------------------------------------------


def _gaussian_family(variant: FukNagaevVariant, x: float, v: float, n: int, alpha: float) -> float:
    if variant == FukNagaevVariant.HN:
        return fuk_nagaev_h(x, v, n, alpha)
    if variant == FukNagaevVariant.BENNETT:
        return bennett_b(x, v, alpha)
    return bernstein_b1(x, v, alpha)


def fuk_nagaev_tail_bound(
    x: float,
    y: float,
    alpha: float,
    n: int,
    B_n_y: float,
    tail_term: float,
    variant: FukNagaevVariant = FukNagaevVariant.HN,
) -> BoundResult:
    """
    ``(1-alpha)^{-1} F(alpha x / y, sqrt(B_n(y)) / y) + tail_term``.

    ``tail_term`` is ``P(max X_k > y)`` for the H_n variant or
    ``sum_i P(X_i > y)`` for the Bennett and Bernstein variants. A zero
    truncated variance leaves only the tail term; the result is flagged.
    """
    require(x > 0.0, "x", x, "x > 0")
    require(y > 0.0, "y", y, "y > 0")
    require(n >= 1, "n", n, "n >= 1")
    _check_alpha(alpha)
    require(B_n_y >= 0.0, "B_n_y", B_n_y, "B_n(y) >= 0")
    require(tail_term >= 0.0, "tail_term", tail_term, "tail_term >= 0")

    inputs = {"x": x, "y": y, "n": n, "B_n_y": B_n_y, "tail_term": tail_term, "variant": variant.value}
    params = {"alpha": alpha, "y": y}
    if B_n_y == 0.0:
        logger.warning(f"Fuk-Nagaev bound at x={x}: zero truncated variance, tail term only")
        return BoundResult.build(
            BoundFamily.FUK_NAGAEV_TAIL, tail_term, inputs, params, flags=("degenerate_variance",)
        )

    core = _gaussian_family(variant, alpha * x / y, math.sqrt(B_n_y) / y, n, alpha)
    return BoundResult.build(BoundFamily.FUK_NAGAEV_TAIL, core / (1.0 - alpha) + tail_term, inputs, params)


def weak_moment_tail_bound(
    x: float, y: float, alpha: float, n: int, B_n: float, A_p: float, p: float
) -> BoundResult:
    """``(1-alpha)^{-1} H_n(alpha x / y, sqrt(B_n) / y) + A(p) / y^p``."""
    require(x > 0.0, "x", x, "x > 0")
    require(y > 0.0, "y", y, "y > 0")
    require(p >= 2.0, "p", p, "p >= 2")
    require(n >= 1, "n", n, "n >= 1")
    _check_alpha(alpha)
    require(B_n >= 0.0, "B_n", B_n, "B_n >= 0")
    require(A_p >= 0.0, "A_p", A_p, "A(p) >= 0")

    inputs = {"x": x, "y": y, "n": n, "B_n": B_n, "A_p": A_p, "p": p}
    params = {"alpha": alpha, "y": y}
    weak_term = A_p / y**p
    if B_n == 0.0:
        logger.warning(f"weak-moment bound at x={x}: zero variance, weak-moment term only")
        return BoundResult.build(BoundFamily.WEAK_MOMENT, weak_term, inputs, params, flags=("degenerate_variance",))

    core = fuk_nagaev_h(alpha * x / y, math.sqrt(B_n) / y, n, alpha)
    return BoundResult.build(BoundFamily.WEAK_MOMENT, core / (1.0 - alpha) + weak_term, inputs, params)


def fuk_tail_bound(x: float, alpha: float, p: float, B_n: float, V_n: float) -> BoundResult:
    """
    Fuk-type bound under finite p-th moments:
    ``(1-alpha)^{-1} [(1+2/p)^p V_n / (alpha x)^p + exp{-2 alpha x^2 / ((p+2)^2 e^p B_n)}]``.
    """
    require(x > 0.0, "x", x, "x > 0")
    require(p >= 2.0, "p", p, "p >= 2")
    require(B_n > 0.0, "B_n", B_n, "B_n > 0")
    require(V_n > 0.0, "V_n", V_n, "V_n > 0")
    _check_alpha(alpha)

    log_poly = p * math.log1p(2.0 / p) + math.log(V_n) - p * math.log(alpha * x)
    poly = _exp(log_poly)
    gauss = math.exp(-alpha * 2.0 * x * x / ((p + 2.0) ** 2 * math.exp(p) * B_n))
    return BoundResult.build(
        BoundFamily.FUK_PTH,
        (poly + gauss) / (1.0 - alpha),
        {"x": x, "p": p, "B_n": B_n, "V_n": V_n},
        {"alpha": alpha},
    )


# ---------------------------------------------------------------------------
# Semi-exponential bounds
# ---------------------------------------------------------------------------


def semi_exponential_tail_bound(
    x: float, alpha: float, p: float, K_n: float, form: SemiExpForm = SemiExpForm.PIECEWISE
) -> BoundResult:
    """
    Bound under ``sum_i E[X_i^2 exp{|X_i|^p}] <= K_n`` with ``p`` in (0, 1).

    The piecewise form is sub-Gaussian while ``alpha x <= K_n^{1/(2-p)}`` and
    semi-exponential beyond; at the breakpoint both branches apply and the
    smaller value is returned.
    """
    require(x > 0.0, "x", x, "x > 0")
    require(0.0 < p < 1.0, "p", p, "0 < p < 1")
    require(K_n >= 1.0, "K_n", K_n, "K_n >= 1")
    _check_alpha(alpha)

    prefactor = 2.0 / (1.0 - alpha)
    ax = alpha * x
    inputs = {"x": x, "p": p, "K_n": K_n, "form": form.value}
    if form == SemiExpForm.SMOOTHED:
        value = prefactor * math.exp(-ax * ax / (2.0 * (K_n + ax ** (2.0 - p))))
        return BoundResult.build(BoundFamily.SEMI_EXP, value, inputs, {"alpha": alpha})

    x_break = K_n ** (1.0 / (2.0 - p))
    sub_gaussian = prefactor * math.exp(-ax * ax / (2.0 * K_n))
    semi_exp = prefactor * math.exp(-(ax**p) / 2.0)
    if ax < x_break:
        value, branch = sub_gaussian, "sub_gaussian"
    elif ax > x_break:
        value, branch = semi_exp, "semi_exponential"
    else:
        value, branch = min(sub_gaussian, semi_exp), "breakpoint"
    return BoundResult.build(BoundFamily.SEMI_EXP, value, inputs, {"alpha": alpha, "branch": branch})


# ---------------------------------------------------------------------------
# Exponential-moment bounds
# ---------------------------------------------------------------------------


def _t1_gap(t: float, tau: float, tau1: float, q: float, K: float, c: float) -> float:
    """log e^{tau1 t^q} - log(1 + K + c t^q e^{tau t^q}); nonnegative where t1 may sit."""
    tq = t**q
    if c == 0.0:
        return tau1 * tq - math.log1p(K)
    log_rhs = np.logaddexp(math.log1p(K), math.log(c) + q * math.log(t) + tau * tq)
    return tau1 * tq - float(log_rhs)


def exp_moment_constants(
    p: float,
    a: float,
    K: float,
    tau1_factor: float = 2.0,
    cap_factor: float = 1e6,
    b_grid: int = 200,
) -> ExpMomentConstants:
    """
    Solve for the constants of the exponential-moment MGF and tail bounds.

    ``t1`` is the smallest point at or above ``a/2`` where
    ``1 + K + c t^q e^{tau t^q} <= e^{tau1 t^q}``, located on a geometric grid
    and refined by bisection. ``B`` is the infimum over ``s`` in ``(0, x1]`` of
    ``sup_{0<=t<=t1} (t s - A t^2) / s^2`` taken on a log grid; it does not
    depend on ``n``.

    Raises:
        ConvergenceError: if no ``t1`` exists below ``cap_factor * a``.
    """
    require(p > 1.0, "p", p, "p > 1")
    require(a > 0.0, "a", a, "a > 0")
    require(K >= 0.0, "K", K, "K >= 0")
    require(tau1_factor > 1.0, "tau1_factor", tau1_factor, "tau1_factor > 1")

    q = p / (p - 1.0)
    tau = (p * a) ** (-q / p) / q
    tau1 = tau1_factor * tau
    a1 = (q * tau1) ** (-p / q) / p
    c = K * (2.0 / a) ** (1.0 / (p - 1.0))

    t_lo = a / 2.0
    cap = cap_factor * a
    if _t1_gap(t_lo, tau, tau1, q, K, c) >= 0.0:
        t1 = t_lo
    else:
        t_hi, steps = t_lo, 0
        ratio = 2.0**0.25
        while _t1_gap(t_hi, tau, tau1, q, K, c) < 0.0:
            t_lo, t_hi = t_hi, t_hi * ratio
            steps += 1
            if t_hi > cap:
                raise ConvergenceError(
                    f"no t1 below {cap:g}; tau1 too close to tau (tau1_factor={tau1_factor})",
                    routine="exp_moment_constants",
                    iterations=steps,
                    limit=cap,
                )
        for _ in range(200):
            mid = 0.5 * (t_lo + t_hi)
            if _t1_gap(mid, tau, tau1, q, K, c) >= 0.0:
                t_hi = mid
            else:
                t_lo = mid
            if t_hi - t_lo <= 1e-14 * t_hi:
                break
        t1 = t_hi
        logger.debug(f"exp-moment t1={t1} after {steps} grid steps")

    x1 = q * tau1 * t1 ** (q - 1.0)
    K1 = math.exp(a) + K
    A = max(2.0 * K1 / a**2, 4.0 * tau1 * t1**q / a**2)

    s = np.geomspace(x1 * 1e-6, x1, b_grid)
    t_star = np.minimum(s / (2.0 * A), t1)
    B = float(np.min((t_star * s - A * t_star**2) / s**2))

    return ExpMomentConstants(
        p=p, q=q, a=a, K=K, tau=tau, tau1=tau1, t1=t1, x1=x1, A=A, B=B, a1=a1, K1=K1, c=c
    )


def exp_moment_mgf_bound(t: float, n: int, c: ExpMomentConstants) -> float:
    """MGF bound: ``exp{n tau1 t^q}`` for ``t >= t1``, ``exp{n A t^2}`` for ``t <= t1``."""
    require(t >= 0.0, "t", t, "t >= 0")
    require(n >= 1, "n", n, "n >= 1")
    large = _exp(n * c.tau1 * t**c.q)
    small = _exp(n * c.A * t * t)
    if t > c.t1:
        return large
    if t < c.t1:
        return small
    return min(large, small)


def _exp_moment_branches(x: float, n: int, c: ExpMomentConstants, scale: float) -> Tuple[float, float, str]:
    large = math.exp(-c.a1 * scale * x**c.p / n ** (c.p - 1.0))
    small = math.exp(-c.B * scale * x * x / n)
    boundary = n * c.x1
    if x > boundary:
        return large, large, "large_deviation"
    if x < boundary:
        return small, small, "moderate_deviation"
    return min(large, small), abs(large - small), "boundary"


def exp_moment_tail_bound(x: float, n: int, alpha: float, c: ExpMomentConstants) -> BoundResult:
    """
    ``(1-alpha)^{-1} exp{-a1 alpha x^p / n^{p-1}}`` if ``x >= n x1``, else
    ``(1-alpha)^{-1} exp{-B alpha x^2 / n}``.

    At ``x = n x1`` both branches are evaluated, the minimum is returned and
    the gap between them is recorded.
    """
    require(x > 0.0, "x", x, "x > 0")
    require(n >= 1, "n", n, "n >= 1")
    _check_alpha(alpha)
    value, gap, branch = _exp_moment_branches(x, n, c, alpha)
    params: Dict[str, Any] = {"alpha": alpha, "branch": branch}
    if branch == "boundary":
        params["continuity_gap"] = gap / (1.0 - alpha)
    return BoundResult.build(
        BoundFamily.EXP_MOMENT,
        value / (1.0 - alpha),
        {"x": x, "n": n, "p": c.p, "a": c.a, "K": c.K, "tau1": c.tau1},
        params,
    )


def exp_moment_final_sum_bound(x: float, n: int, c: ExpMomentConstants) -> BoundResult:
    """Bound on ``P(S_n >= x)`` from the MGF bound alone (no alpha, no maximum)."""
    require(x > 0.0, "x", x, "x > 0")
    require(n >= 1, "n", n, "n >= 1")
    value, gap, branch = _exp_moment_branches(x, n, c, 1.0)
    params: Dict[str, Any] = {"branch": branch, "statistic": "FinalSum"}
    if branch == "boundary":
        params["continuity_gap"] = gap
    return BoundResult.build(
        BoundFamily.EXP_MOMENT,
        value,
        {"x": x, "n": n, "p": c.p, "a": c.a, "K": c.K, "tau1": c.tau1},
        params,
    )


# ---------------------------------------------------------------------------
# Bernstein-condition bounds
# ---------------------------------------------------------------------------


def bernstein_condition_tail_bound(
    x: float, alpha: float, M: float, B_n: float, form: BernsteinForm = BernsteinForm.SHARP
) -> BoundResult:
    """
    Bound under ``|sum_i E X_i^k| <= k! M^{k-2} B_n / 2`` for all ``k >= 2``.

    Sharp: denominator ``B_n (1 + sqrt(2 x M / B_n)) + x M``;
    Simple: denominator ``2 (B_n + x M)``. Sharp never exceeds Simple.
    """
    require(x > 0.0, "x", x, "x > 0")
    require(M > 0.0, "M", M, "M > 0")
    require(B_n > 0.0, "B_n", B_n, "B_n > 0")
    _check_alpha(alpha)

    if form == BernsteinForm.SHARP:
        denominator = B_n * (1.0 + math.sqrt(2.0 * x * M / B_n)) + x * M
    else:
        denominator = 2.0 * (B_n + x * M)
    return BoundResult.build(
        BoundFamily.BERNSTEIN_COND,
        math.exp(-alpha * x * x / denominator) / (1.0 - alpha),
        {"x": x, "M": M, "B_n": B_n, "form": form.value},
        {"alpha": alpha},
    )


def bernstein_condition_exponent(t: float, x: float, alpha: float, M: float, B_n: float) -> float:
    """The bound before optimizing over ``t`` in ``(0, 1/M)``."""
    require(0.0 < t < 1.0 / M, "t", t, "0 < t < 1/M")
    _check_alpha(alpha)
    return _exp(-t * alpha * x + alpha * B_n * t * t / (2.0 * (1.0 - M * t))) / (1.0 - alpha)


# ---------------------------------------------------------------------------
# Bounded summands: the function ell, its Young transform, and the range bounds
# ---------------------------------------------------------------------------


def rio_ell(t: float) -> float:
    """
    ``ell(t) = (t - ln t - 1) + t / (e^t - 1) + ln(1 - e^{-t})`` for ``t > 0``.

    Below ``t = 1e-3`` the series ``t^2/8 - t^4/576 + t^6/25920`` is used; the
    closed form cancels to O(t^2) there.
    """
    require(t > 0.0, "t", t, "t > 0")
    if t < ELL_SERIES_CUTOFF:
        t2 = t * t
        return t2 / 8.0 - t2 * t2 / 576.0 + t2 * t2 * t2 / 25920.0
    one_minus_e = -math.expm1(-t)
    return (t - 1.0) + t * math.exp(-t) / one_minus_e + (math.log(one_minus_e) - math.log(t))


def rio_ell_prime(t: float) -> float:
    """Derivative of ``ell``; increases from 0 to 1 on ``(0, inf)``."""
    require(t > 0.0, "t", t, "t > 0")
    if t < ELL_PRIME_SERIES_CUTOFF:
        return t / 4.0 - t**3 / 144.0 + t**5 / 4320.0
    e = math.exp(-t)
    one_minus_e = -math.expm1(-t)
    return 1.0 - 1.0 / t + 2.0 * e / one_minus_e - t * e / (one_minus_e * one_minus_e)


RIO_ELL = ScalarFunction(rio_ell, lower=0.0, convexity=Convexity.CONVEX)


def rio_ell_star(x: float) -> float:
    """
    Young transform ``sup_{t>0} (x t - ell(t))`` for ``0 <= x < 1``.

    The maximizer solves ``ell'(t) = x``; it is bracketed by doubling or
    halving from ``t = 1`` on the sign of ``x - ell'(t)`` and refined by
    golden-section search to a relative width of 1e-12.
    """
    require(0.0 <= x < 1.0, "x", x, "0 <= x < 1")

    t, steps = 1.0, 0
    if rio_ell_prime(t) < x:
        while rio_ell_prime(t) < x:
            t *= 2.0
            steps += 1
            if t > 1e12:
                raise ConvergenceError(
                    f"ell* bracket diverged at x={x}", routine="rio_ell_star", iterations=steps, limit=1e12
                )
        lo, hi = t / 2.0, t
    else:
        while t > 1e-12 and rio_ell_prime(t) > x:
            t /= 2.0
            steps += 1
        lo, hi = max(t, 1e-12), 2.0 * t

    result = golden_section_search(lambda s: x * s - rio_ell(s), lo, hi, tol=1e-12, maximize=True)
    return max(0.0, result.value)


def rio_ell_star_floor(x: float) -> float:
    """Closed-form lower bound ``max{2x^2 + 4x^4/9, (x^2 - 2x) ln(1 - x)}`` of ell*."""
    require(0.0 <= x < 1.0, "x", x, "0 <= x < 1")
    return max(2.0 * x * x + 4.0 * x**4 / 9.0, (x * x - 2.0 * x) * math.log1p(-x))


def _require_range(rng: BoundedRangeSpec) -> None:
    if rng.m2 <= 0.0:
        raise DegenerateInputError(
            "all ranges have zero width (M_i = m_i)", quantity="M^2(n)", error_code="DEGENERATE_RANGE"
        )


def rio_mgf_bound(t: float, rng: BoundedRangeSpec) -> float:
    """``exp{(D^2/M^2) ell(M^2 t / D)}``, equal to 1 at ``t = 0``."""
    require(t >= 0.0, "t", t, "t >= 0")
    _require_range(rng)
    if t == 0.0:
        return 1.0
    d, m2 = rng.d, rng.m2
    return _exp(d * d / m2 * rio_ell(m2 * t / d))


def rio_tail_bound(
    x: float, alpha: float, rng: BoundedRangeSpec, form: RioForm = RioForm.YOUNG
) -> BoundResult:
    """
    Tail bounds for bounded summands ``m_i <= X_i <= M_i``.

    YoungForm and ClosedForm need ``0 <= x <= D(n)``; DeltaForm and
    DeltaRelaxed need ``0 <= x <= n Delta(n)``; HoeffdingAzuma (a bound on the
    final sum, free of alpha) needs ``x >= 0``.
    """
    require(x >= 0.0, "x", x, "x >= 0")
    _check_alpha(alpha)
    _require_range(rng)
    d, m2, n, delta = rng.d, rng.m2, rng.n, rng.delta
    inputs = {"x": x, "n": n, "D": d, "M2": m2, "Delta": delta, "form": form.value}
    params: Dict[str, Any] = {"alpha": alpha}

    if form in (RioForm.YOUNG, RioForm.CLOSED):
        require(x <= d, "x", x, f"x <= D(n) = {d}")
    elif form in (RioForm.DELTA, RioForm.DELTA_RELAXED):
        require(x <= n * delta, "x", x, f"x <= n Delta(n) = {n * delta}")

    if form == RioForm.YOUNG:
        value = 0.0 if x == d else math.exp(-alpha * d * d / m2 * rio_ell_star(x / d)) / (1.0 - alpha)
    elif form == RioForm.CLOSED:
        value = 0.0 if x == d else math.exp(alpha * x * (2.0 * d - x) / m2 * math.log1p(-x / d))
    elif form == RioForm.HOEFFDING_AZUMA:
        params = {}
        return BoundResult.build(BoundFamily.HOEFFDING_AZUMA, math.exp(-2.0 * x * x / m2), inputs, params)
    elif form == RioForm.DELTA:
        span = n * delta
        value = 0.0 if x == span else math.exp(-alpha * n * rio_ell_star(x / span))
    else:
        value = math.exp(-2.0 * alpha * x * x / (n * delta * delta))
    return BoundResult.build(BoundFamily.RIO, value, inputs, params)
