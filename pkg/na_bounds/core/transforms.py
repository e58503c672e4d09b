"""
One-dimensional numerical machinery: golden-section search, Young transforms,
and the free-parameter searches over alpha and the truncation level y.

Everything here is a pure function of its arguments.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from na_bounds.core.errors import ConvergenceError, require
from na_bounds.types import Convexity, TruncationMode

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

ALPHA_LOWER = 1e-6
ALPHA_UPPER = 1.0 - 1e-6
ALPHA_SCAN_POINTS = 64
Y_SCAN_POINTS = 256
BRACKET_CAP = 1e12
BRACKET_FLOOR = 1e-12


@dataclass(frozen=True)
class ScalarFunction:
    """A real function of one variable together with its domain.

    Infinite ends are given as ``math.inf``; ``lower_open``/``upper_open`` say
    whether the end itself belongs to the domain.
    """

    evaluator: Callable[[float], float]
    lower: float = 0.0
    upper: float = math.inf
    lower_open: bool = True
    upper_open: bool = True
    convexity: Convexity = Convexity.UNKNOWN

    def __call__(self, t: float) -> float:
        return self.evaluator(t)

    def contains(self, t: float) -> bool:
        above = t > self.lower if self.lower_open else t >= self.lower
        below = t < self.upper if self.upper_open else t <= self.upper
        return above and below


@dataclass(frozen=True)
class OptimizationResult:
    """Location and value of an optimum found by a bracketed search."""

    argopt: float
    value: float
    iterations: int
    bracket: Tuple[float, float]


def _finite(v: float) -> float:
    return v if math.isfinite(v) else math.inf


def golden_section_search(
    fn: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = 1e-12,
    maximize: bool = False,
    max_iter: int = 500,
) -> OptimizationResult:
    """
    Golden-section search for the minimum (or maximum) of a unimodal function.

    Stops once the bracket width drops below ``tol * max(1, |midpoint|)``. The
    returned point is the best of the final interior points and the original
    bracket ends, so a monotone function still reports the right endpoint.
    """
    sign = -1.0 if maximize else 1.0

    def g(t: float) -> float:
        v = fn(t)
        return math.inf if math.isnan(v) else sign * v

    lo, hi = float(lower), float(upper)
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = g(x1), g(x2)
    iterations = 0
    while iterations < max_iter and (hi - lo) > tol * max(1.0, abs(0.5 * (lo + hi))):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = g(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = g(x2)
        iterations += 1

    candidates = [(f1, x1), (f2, x2), (g(lower), float(lower)), (g(upper), float(upper))]
    best_f, best_t = min(candidates, key=lambda c: c[0])
    logger.debug(f"golden section: {iterations} iterations, bracket [{lo}, {hi}]")
    return OptimizationResult(
        argopt=best_t,
        value=sign * best_f,
        iterations=iterations,
        bracket=(float(lower), float(upper)),
    )


def young_transform(f: ScalarFunction, x: float, tol: float = 1e-12) -> OptimizationResult:
    """
    Compute ``sup_{t>0} (x t - f(t))`` for a convex ``f`` on ``(0, inf)``.

    The maximizer is bracketed by doubling or halving from ``t = 1`` until the
    objective turns down, then refined by golden-section search. Concavity of
    ``t -> x t - f(t)`` makes the bracket unimodal.

    Raises:
        DomainError: if ``x`` is negative.
        ConvergenceError: if the doubling passes ``t = 1e12`` without turning,
            i.e. ``x`` lies outside the effective domain of the transform.
    """
    require(x >= 0.0, "x", x, "x >= 0")

    def phi(t: float) -> float:
        return x * t - f(t)

    t = 1.0
    steps = 0
    if phi(2.0 * t) > phi(t):
        while phi(2.0 * t) > phi(t):
            t *= 2.0
            steps += 1
            if t > BRACKET_CAP:
                raise ConvergenceError(
                    f"Young transform at x={x} did not bracket a maximizer",
                    routine="young_transform",
                    iterations=steps,
                    limit=BRACKET_CAP,
                )
        lo, hi = t / 2.0, 2.0 * t
    else:
        while t > BRACKET_FLOOR and phi(t / 2.0) > phi(t):
            t /= 2.0
            steps += 1
        lo = BRACKET_FLOOR if t <= BRACKET_FLOOR else t / 2.0
        hi = 2.0 * t

    result = golden_section_search(phi, lo, hi, tol=tol, maximize=True)
    logger.debug(
        f"young transform x={x}: bracket ({lo}, {hi}) after {steps} steps, "
        f"t*={result.argopt}"
    )
    return OptimizationResult(
        argopt=result.argopt,
        value=result.value,
        iterations=steps + result.iterations,
        bracket=(lo, hi),
    )


def _scan_then_refine(
    fn: Callable[[float], float], grid: np.ndarray, log_space: bool
) -> OptimizationResult:
    """Seed a golden-section search from the best point of a coarse scan."""
    values = np.array([_finite(fn(float(g))) for g in grid])
    i = int(np.argmin(values))
    lo_i, hi_i = max(i - 1, 0), min(i + 1, len(grid) - 1)

    if log_space:
        refined = golden_section_search(
            lambda s: fn(math.exp(s)),
            math.log(grid[lo_i]),
            math.log(grid[hi_i]),
            tol=1e-12,
        )
        arg = math.exp(refined.argopt)
    else:
        refined = golden_section_search(fn, float(grid[lo_i]), float(grid[hi_i]), tol=1e-12)
        arg = refined.argopt

    if values[i] <= refined.value:
        arg, value = float(grid[i]), float(values[i])
    else:
        value = refined.value
    return OptimizationResult(
        argopt=arg,
        value=value,
        iterations=len(grid) + refined.iterations,
        bracket=(float(grid[lo_i]), float(grid[hi_i])),
    )


def minimize_over_alpha(
    bound: Callable[[float], float],
    scan_points: int = ALPHA_SCAN_POINTS,
) -> OptimizationResult:
    """
    Minimize a bound over its free alpha on ``[1e-6, 1 - 1e-6]``.

    ``bound`` maps alpha to the raw bound value with every other argument fixed.
    A bound that does not depend on alpha reports alpha = 0.5.
    """
    grid = np.linspace(ALPHA_LOWER, ALPHA_UPPER, scan_points)
    values = np.array([_finite(bound(float(a))) for a in grid])
    spread = float(np.max(values) - np.min(values)) if np.all(np.isfinite(values)) else math.inf
    if spread <= 1e-15 * max(1.0, abs(float(np.min(values)))):
        return OptimizationResult(
            argopt=0.5, value=bound(0.5), iterations=scan_points, bracket=(ALPHA_LOWER, ALPHA_UPPER)
        )
    return _scan_then_refine(bound, grid, log_space=False)


def default_truncation_level(x: float, n: int, p: float) -> float:
    """
    Truncation level ``y = 3 n x / (2 p ln n)``.

    ``x`` is the deviation per summand: the bound is taken at the total
    deviation ``n x``.
    """
    require(n >= 3, "n", n, "n >= 3 (ln n > 1) for the default truncation rule")
    require(x > 0.0, "x", x, "x > 0")
    require(p > 0.0, "p", p, "p > 0")
    return 3.0 * n * x / (2.0 * p * math.log(n))


def optimize_truncation_y(
    bound: Callable[[float], float],
    x: float,
    n: int,
    p: float,
    mode: TruncationMode = TruncationMode.DEFAULT_RULE,
    scan_points: int = Y_SCAN_POINTS,
) -> OptimizationResult:
    """
    Choose the truncation level y of a weak-moment or Fuk-Nagaev bound.

    Args:
        bound: maps y to the raw bound value with everything else fixed.
        x: deviation per summand (the bound is evaluated at ``n x``).
        n: sequence length.
        p: moment order of the weak-moment assumption.
        mode: ``DEFAULT_RULE`` returns ``y = 3 n x / (2 p ln n)``;
            ``NUMERIC_SCAN`` scans a log grid over ``[x/1e3, 1e3 x]``, widened to
            a decade around the default point when ``n >= 3``, and refines by
            golden-section search.
    """
    require(x > 0.0, "x", x, "x > 0")

    if mode == TruncationMode.DEFAULT_RULE:
        y = default_truncation_level(x, n, p)
        return OptimizationResult(argopt=y, value=bound(y), iterations=0, bracket=(y, y))

    lo, hi = x / 1e3, x * 1e3
    default_point: Optional[float] = None
    if n >= 3:
        default_point = default_truncation_level(x, n, p)
        lo, hi = min(lo, default_point / 10.0), max(hi, default_point * 10.0)

    grid = np.geomspace(lo, hi, scan_points)
    result = _scan_then_refine(bound, grid, log_space=True)
    if default_point is not None:
        default_value = _finite(bound(default_point))
        if default_value < result.value:
            result = OptimizationResult(
                argopt=default_point,
                value=default_value,
                iterations=result.iterations,
                bracket=result.bracket,
            )
    return result
