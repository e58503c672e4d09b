"""
Bound registry: maps bound ids to evaluators over a MomentSummary.

Each entry declares the moment functionals it consumes and the statistic its
probability statement controls. ``evaluate_bound`` resolves the free
parameters (``alpha``, ``y``) before evaluating.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from na_bounds.core import bounds as B
from na_bounds.core.config import NABoundsConfig, get_config
from na_bounds.core.errors import (
    NABoundsError,
    config_validation_error,
    divergence_error,
)
from na_bounds.core.moments import MomentSummary
from na_bounds.core.transforms import (
    default_truncation_level,
    minimize_over_alpha,
    optimize_truncation_y,
)
from na_bounds.types import (
    BernsteinForm,
    BoundFamily,
    FukNagaevVariant,
    RioForm,
    SemiExpForm,
    Statistic,
    TruncationMode,
)

logger = logging.getLogger(__name__)

AUTO = "auto"
DEFAULT = "default"
TIE_TOL = 1e-12

KNOWN_PARAMS = frozenset(
    {"alpha", "y", "p", "a", "tau1_factor", "B_n", "V_n", "K_n", "K", "M", "A_p", "v", "n", "label"}
)

# functional -> parameter that overrides it
OVERRIDES = {
    "B_n": "B_n",
    "V_n": "V_n",
    "A_p": "A_p",
    "K_n": "K_n",
    "K_exp": "K",
    "bernstein_M": "M",
    "range": None,
}

Evaluator = Callable[[float, MomentSummary, Mapping[str, Any], float, Optional[float]], B.BoundResult]


@dataclass(frozen=True)
class BoundSpec:
    name: str
    family: BoundFamily
    required_functionals: FrozenSet[str]
    statistic: Optional[Statistic]
    evaluate: Evaluator
    description: str
    uses_alpha: bool = True
    uses_y: bool = False


@dataclass(frozen=True)
class BoundSelection:
    """A bound id with its fixed or ``auto``/``default`` parameters."""

    id: str
    params: Mapping[str, Any] = field(default_factory=dict)

    @property
    def label(self) -> str:
        return str(self.params.get("label", self.id))


# ---------------------------------------------------------------------------
# Functional lookup
# ---------------------------------------------------------------------------


def _need(value: Optional[float], name: str, summary: MomentSummary) -> float:
    if value is None:
        reason = summary.divergent.get(name, "not available")
        raise divergence_error(name, "summary", reason)
    return value


def _n(summary: MomentSummary, params: Mapping[str, Any]) -> int:
    return int(params.get("n", summary.n))


def _b_n(summary: MomentSummary, params: Mapping[str, Any]) -> float:
    return float(params.get("B_n", summary.B_n))


def _v(summary: MomentSummary, params: Mapping[str, Any]) -> float:
    return float(params["v"]) if "v" in params else math.sqrt(_b_n(summary, params))


def _truncation_p(summary: MomentSummary, params: Mapping[str, Any]) -> float:
    return float(params.get("p", summary.p_fuk))


@lru_cache(maxsize=64)
def _exp_constants(p: float, a: float, K: float, tau1_factor: float, cap: float, grid: int) -> B.ExpMomentConstants:
    return B.exp_moment_constants(p, a, K, tau1_factor=tau1_factor, cap_factor=cap, b_grid=grid)


# ---------------------------------------------------------------------------
# Evaluators
# ---------------------------------------------------------------------------


def _gaussian_function(family: BoundFamily, fn: Callable[..., float], with_n: bool) -> Evaluator:
    def evaluate(
        x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
    ) -> B.BoundResult:
        v = _v(summary, params)
        n = _n(summary, params)
        value = fn(x, v, n, alpha) if with_n else fn(x, v, alpha)
        return B.BoundResult.build(family, value, {"x": x, "v": v, "n": n}, {"alpha": alpha})

    return evaluate


def _fuk_nagaev(variant: FukNagaevVariant) -> Evaluator:
    def evaluate(
        x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
    ) -> B.BoundResult:
        assert y is not None
        b_n_y = float(params["B_n"]) if "B_n" in params else summary.b_n_at(y)
        return B.fuk_nagaev_tail_bound(
            x, y, alpha, _n(summary, params), b_n_y, summary.tail_sum_at(y), variant
        )

    return evaluate


def _weak_moment(
    x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
) -> B.BoundResult:
    assert y is not None
    p = _truncation_p(summary, params)
    if "A_p" in params:
        a_p = float(params["A_p"])
    elif p == summary.p_fuk:
        a_p = _need(summary.A_p, "A_p", summary)
    else:
        a_p = summary.a_p_at(p)
    return B.weak_moment_tail_bound(x, y, alpha, _n(summary, params), _b_n(summary, params), a_p, p)


def _fuk_pth(
    x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
) -> B.BoundResult:
    p = float(params.get("p", summary.p_fuk))
    if "V_n" in params:
        v_n = float(params["V_n"])
    elif p == summary.p_fuk:
        v_n = _need(summary.V_n, "V_n", summary)
    else:
        v_n = summary.v_n_at(p)
    return B.fuk_tail_bound(x, alpha, p, _b_n(summary, params), v_n)


def _semi_exp(form: SemiExpForm) -> Evaluator:
    def evaluate(
        x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
    ) -> B.BoundResult:
        p = float(params.get("p", summary.p_semi))
        if "K_n" in params:
            k_n = float(params["K_n"])
        elif p == summary.p_semi:
            k_n = _need(summary.K_n, "K_n", summary)
        else:
            k_n = summary.k_n_at(p)
        return B.semi_exponential_tail_bound(x, alpha, p, k_n, form)

    return evaluate


def _exp_moment_inputs(summary: MomentSummary, params: Mapping[str, Any]) -> B.ExpMomentConstants:
    p = float(params.get("p", summary.p_exp))
    a = float(params.get("a", summary.a))
    if "K" in params:
        k = float(params["K"])
    elif p == summary.p_exp and a == summary.a:
        k = _need(summary.K_exp, "K_exp", summary)
    else:
        k = summary.k_exp_at(a, p)
    config = get_config()
    return _exp_constants(p, a, k, float(params.get("tau1_factor", 2.0)), config.t1_cap_factor, config.b_grid)


def _exp_moment(
    x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
) -> B.BoundResult:
    return B.exp_moment_tail_bound(x, _n(summary, params), alpha, _exp_moment_inputs(summary, params))


def _exp_moment_final_sum(
    x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
) -> B.BoundResult:
    return B.exp_moment_final_sum_bound(x, _n(summary, params), _exp_moment_inputs(summary, params))


def _bernstein(form: BernsteinForm) -> Evaluator:
    def evaluate(
        x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
    ) -> B.BoundResult:
        m = float(params["M"]) if "M" in params else _need(summary.bernstein_M, "bernstein_M", summary)
        return B.bernstein_condition_tail_bound(x, alpha, m, _b_n(summary, params), form)

    return evaluate


def _rio(form: RioForm) -> Evaluator:
    def evaluate(
        x: float, summary: MomentSummary, params: Mapping[str, Any], alpha: float, y: Optional[float]
    ) -> B.BoundResult:
        if summary.range is None:
            raise divergence_error("range", "summary", summary.divergent.get("range", "unbounded support"))
        return B.rio_tail_bound(x, alpha, summary.range, form)

    return evaluate


def _spec(
    name: str,
    family: BoundFamily,
    required: set,
    statistic: Optional[Statistic],
    evaluate: Evaluator,
    description: str,
    uses_alpha: bool = True,
    uses_y: bool = False,
) -> BoundSpec:
    return BoundSpec(name, family, frozenset(required), statistic, evaluate, description, uses_alpha, uses_y)


_MAX = Statistic.MAX_PREFIX
_FINAL = Statistic.FINAL_SUM

BOUND_REGISTRY: Dict[str, BoundSpec] = {
    s.name: s
    for s in [
        _spec("h_n", BoundFamily.FUK_NAGAEV_H, {"B_n"}, None,
              _gaussian_function(BoundFamily.FUK_NAGAEV_H, B.fuk_nagaev_h, True),
              "Gaussian-family function H_n(x, v)"),
        _spec("bennett", BoundFamily.BENNETT, {"B_n"}, None,
              _gaussian_function(BoundFamily.BENNETT, B.bennett_b, False),
              "Bennett function B(x, v)"),
        _spec("bernstein_b1", BoundFamily.BERNSTEIN1, {"B_n"}, None,
              _gaussian_function(BoundFamily.BERNSTEIN1, B.bernstein_b1, False),
              "Bernstein function B_1(x, v)"),
        _spec("fuk_nagaev_h", BoundFamily.FUK_NAGAEV_TAIL, {"B_n"}, _MAX,
              _fuk_nagaev(FukNagaevVariant.HN),
              "Fuk-Nagaev bound closed by H_n", uses_y=True),
        _spec("fuk_nagaev_bennett", BoundFamily.FUK_NAGAEV_TAIL, {"B_n"}, _MAX,
              _fuk_nagaev(FukNagaevVariant.BENNETT),
              "Fuk-Nagaev bound closed by Bennett", uses_y=True),
        _spec("fuk_nagaev_bernstein", BoundFamily.FUK_NAGAEV_TAIL, {"B_n"}, _MAX,
              _fuk_nagaev(FukNagaevVariant.BERNSTEIN),
              "Fuk-Nagaev bound closed by Bernstein", uses_y=True),
        _spec("weak_moment", BoundFamily.WEAK_MOMENT, {"B_n", "A_p"}, _MAX, _weak_moment,
              "Bound under finite weak p-th moments", uses_y=True),
        _spec("fuk_pth", BoundFamily.FUK_PTH, {"B_n", "V_n"}, _MAX, _fuk_pth,
              "Fuk-type bound under finite p-th moments"),
        _spec("semi_exp_piecewise", BoundFamily.SEMI_EXP, {"K_n"}, _MAX,
              _semi_exp(SemiExpForm.PIECEWISE), "Semi-exponential bound, piecewise"),
        _spec("semi_exp_smoothed", BoundFamily.SEMI_EXP, {"K_n"}, _MAX,
              _semi_exp(SemiExpForm.SMOOTHED), "Semi-exponential bound, smoothed"),
        _spec("exp_moment", BoundFamily.EXP_MOMENT, {"K_exp"}, _MAX, _exp_moment,
              "Bound under finite exponential moments"),
        _spec("exp_moment_final_sum", BoundFamily.EXP_MOMENT, {"K_exp"}, _FINAL, _exp_moment_final_sum,
              "Exponential-moment bound on the final sum", uses_alpha=False),
        _spec("bernstein_sharp", BoundFamily.BERNSTEIN_COND, {"B_n", "bernstein_M"}, _MAX,
              _bernstein(BernsteinForm.SHARP), "Bernstein-condition bound, sharp form"),
        _spec("bernstein_simple", BoundFamily.BERNSTEIN_COND, {"B_n", "bernstein_M"}, _MAX,
              _bernstein(BernsteinForm.SIMPLE), "Bernstein-condition bound, simple form"),
        _spec("rio_young", BoundFamily.RIO, {"range"}, _MAX, _rio(RioForm.YOUNG),
              "Bounded summands, Young-transform form"),
        _spec("rio_closed", BoundFamily.RIO, {"range"}, _MAX, _rio(RioForm.CLOSED),
              "Bounded summands, closed form"),
        _spec("rio_delta", BoundFamily.RIO, {"range"}, _MAX, _rio(RioForm.DELTA),
              "Bounded summands, largest-width form"),
        _spec("rio_delta_relaxed", BoundFamily.RIO, {"range"}, _MAX, _rio(RioForm.DELTA_RELAXED),
              "Bounded summands, relaxed largest-width form"),
        _spec("hoeffding_azuma", BoundFamily.HOEFFDING_AZUMA, {"range"}, _FINAL,
              _rio(RioForm.HOEFFDING_AZUMA), "Hoeffding-Azuma bound on the final sum", uses_alpha=False),
    ]
}


def get_bound_spec(bound_id: str) -> BoundSpec:
    try:
        return BOUND_REGISTRY[bound_id]
    except KeyError:
        raise config_validation_error("bound", bound_id, f"unknown bound id; known: {', '.join(BOUND_REGISTRY)}") from None


def validate_params(bound_id: str, params: Mapping[str, Any]) -> None:
    get_bound_spec(bound_id)
    unknown = sorted(set(params) - KNOWN_PARAMS)
    if unknown:
        raise config_validation_error(f"bounds.{bound_id}.{unknown[0]}", params[unknown[0]], "unknown parameter")
    alpha = params.get("alpha")
    if isinstance(alpha, str) and alpha != AUTO:
        raise config_validation_error(f"bounds.{bound_id}.alpha", alpha, "must be a number or 'auto'")
    y = params.get("y")
    if isinstance(y, str) and y not in (AUTO, DEFAULT):
        raise config_validation_error(f"bounds.{bound_id}.y", y, "must be a number, 'auto' or 'default'")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _resolve_y(
    spec: BoundSpec,
    x: float,
    summary: MomentSummary,
    params: Mapping[str, Any],
    alpha: float,
) -> Tuple[float, str]:
    raw = params.get("y", DEFAULT)
    if not isinstance(raw, str):
        return float(raw), "fixed"
    n = _n(summary, params)
    p = _truncation_p(summary, params)
    if raw == DEFAULT:
        return default_truncation_level(x / n, n, p), TruncationMode.DEFAULT_RULE.value
    result = optimize_truncation_y(
        lambda y: spec.evaluate(x, summary, params, alpha, y).raw_value,
        x / n,
        n,
        p,
        TruncationMode.NUMERIC_SCAN,
    )
    return result.argopt, TruncationMode.NUMERIC_SCAN.value


def evaluate_bound(
    bound_id: str,
    x: float,
    summary: MomentSummary,
    params: Optional[Mapping[str, Any]] = None,
    config: Optional[NABoundsConfig] = None,
) -> B.BoundResult:
    """
    Evaluate a registered bound at total deviation ``x``.

    ``alpha`` defaults to the configured default; ``auto`` minimizes over it.
    ``y`` defaults to the rule ``3 n (x/n) / (2 p ln n)``; ``auto`` scans it.
    The two are resolved coordinate-wise: ``y`` first at the starting alpha.
    """
    params = dict(params or {})
    validate_params(bound_id, params)
    spec = get_bound_spec(bound_id)
    config = config or get_config()

    alpha_raw = params.get("alpha", config.alpha_default)
    alpha0 = config.alpha_default if alpha_raw == AUTO else float(alpha_raw)
    if not spec.uses_alpha:
        alpha0 = config.alpha_default

    y: Optional[float] = None
    extra: Dict[str, Any] = {}
    if spec.uses_y:
        y, rule = _resolve_y(spec, x, summary, params, alpha0)
        extra["y_rule"] = rule

    alpha = alpha0
    if spec.uses_alpha and alpha_raw == AUTO:
        alpha = minimize_over_alpha(lambda a: spec.evaluate(x, summary, params, a, y).raw_value).argopt
        extra["alpha_rule"] = AUTO

    result = spec.evaluate(x, summary, params, alpha, y)
    if not extra:
        return result
    return B.BoundResult(
        family=result.family,
        inputs=result.inputs,
        chosen_params={**result.chosen_params, **extra},
        raw_value=result.raw_value,
        clipped_value=result.clipped_value,
        flags=result.flags,
    )


def missing_functional(spec: BoundSpec, summary: MomentSummary, params: Mapping[str, Any]) -> Optional[str]:
    """Name and reason of the first required functional that is unavailable."""
    for name in sorted(spec.required_functionals):
        override = OVERRIDES.get(name)
        if override and override in params:
            continue
        value = summary.range if name == "range" else getattr(summary, name)
        if value is None:
            return f"{name}: {summary.divergent.get(name, 'not available')}"
    return None


def applicable_bounds(
    summary: MomentSummary, selections: Sequence[BoundSelection]
) -> Tuple[List[BoundSelection], Dict[str, str]]:
    """Split selections into applicable ones and skipped ones with reasons."""
    applicable: List[BoundSelection] = []
    skipped: Dict[str, str] = {}
    for selection in selections:
        reason = missing_functional(get_bound_spec(selection.id), summary, selection.params)
        if reason is None:
            applicable.append(selection)
        else:
            skipped[selection.label] = reason
            logger.warning(f"skipping bound {selection.label}: {reason}")
    return applicable, skipped


@dataclass(frozen=True)
class RankedBound:
    label: str
    result: B.BoundResult
    rank: int
    tightest: bool
    tied: bool


def rank_results(results: Sequence[Tuple[str, B.BoundResult]]) -> List[RankedBound]:
    """
    Rank bounds by raw value, ties broken by family order then input order.

    Values equal within 1e-12 relative share a rank and are reported as ties.
    """
    order = sorted(range(len(results)), key=lambda i: (results[i][1].raw_value, results[i][1].family.rank, i))

    def same(u: float, v: float) -> bool:
        return u == v or abs(u - v) <= TIE_TOL * max(abs(u), abs(v))

    ranks: List[int] = []
    for pos, i in enumerate(order):
        if pos and same(results[i][1].raw_value, results[order[pos - 1]][1].raw_value):
            ranks.append(ranks[-1])
        else:
            ranks.append(pos + 1)

    ranked = []
    for pos, i in enumerate(order):
        tied = any(ranks[q] == ranks[pos] for q in range(len(order)) if q != pos)
        label, result = results[i]
        ranked.append(RankedBound(label, result, ranks[pos], ranks[pos] == 1, tied))
    return ranked


def safe_evaluate(
    selection: BoundSelection, x: float, summary: MomentSummary
) -> Tuple[Optional[B.BoundResult], Optional[str]]:
    """Evaluate, turning numerical-core failures into a skip reason."""
    try:
        return evaluate_bound(selection.id, x, summary, selection.params), None
    except NABoundsError as e:
        if e.error_code == "CONFIG_INVALID":
            raise
        return None, f"{e.error_code}: {e.message}"
