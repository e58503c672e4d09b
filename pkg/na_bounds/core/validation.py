"""
The validation matrix: Monte Carlo domination of every applicable bound,
convex comparison of NA sums against independent copies, and the maximal
moment inequality for nonnegative supermartingales.

A failed check is a finding, never an exception.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from na_bounds.core.bounds import BoundResult
from na_bounds.core.experiment import ExperimentConfig
from na_bounds.core.montecarlo import (
    bound_statistic,
    convex_comparison,
    domination_report,
    estimate_tails,
    gaussian_exponential_moments,
    supermartingale_max_moment,
)
from na_bounds.core.registry import applicable_bounds, get_bound_spec, safe_evaluate
from na_bounds.core.sampler import GaussianNegCov
from na_bounds.types import ConvexKind, Statistic

logger = logging.getLogger(__name__)

VALIDATION_COLUMNS = ["check", "model", "x", "bound", "p_hat", "ci_high", "bound_raw", "dominated", "margin"]

BoundTransform = Callable[[str, BoundResult], BoundResult]


@dataclass
class ValidationRow:
    check: str
    model: str
    x: Optional[float]
    bound: str
    p_hat: Optional[float] = None
    ci_high: Optional[float] = None
    bound_raw: Optional[float] = None
    dominated: Optional[bool] = None
    margin: Optional[float] = None

    def as_list(self) -> List[object]:
        return [getattr(self, column) for column in VALIDATION_COLUMNS]


@dataclass
class ValidationOutcome:
    rows: List[ValidationRow] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    skipped: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.findings

    def record(self, row: ValidationRow, finding: Optional[str] = None) -> None:
        self.rows.append(row)
        if finding:
            self.findings.append(finding)
            logger.warning(f"validation finding: {finding}")


def _domination_checks(
    config: ExperimentConfig, outcome: ValidationOutcome, bound_transform: Optional[BoundTransform]
) -> None:
    assert config.model is not None
    summary = config.summary()
    label = config.model_label
    selections, skipped = applicable_bounds(summary, config.bounds)
    for name, reason in skipped.items():
        outcome.skipped[name] = reason
        outcome.record(ValidationRow("skipped", label, None, f"{name}: {reason}"))

    by_statistic: Dict[Statistic, List] = {Statistic.MAX_PREFIX: [], Statistic.FINAL_SUM: []}
    for selection in selections:
        statistic = get_bound_spec(selection.id).statistic
        if statistic is None:
            reason = "evaluates a function, not a probability bound"
            outcome.skipped[selection.label] = reason
            outcome.record(ValidationRow("skipped", label, None, f"{selection.label}: {reason}"))
            continue
        by_statistic[statistic].append(selection)

    run = config.run
    for statistic, chosen in by_statistic.items():
        if not chosen:
            continue
        estimates = estimate_tails(
            config.model, run.x_grid, run.reps, run.master_seed, statistic, run.threads, run.block_size
        )
        for estimate in estimates:
            for selection in chosen:
                result, reason = safe_evaluate(selection, estimate.x, summary)
                if result is None:
                    outcome.record(
                        ValidationRow("skipped", label, estimate.x, f"{selection.label}: {reason}")
                    )
                    continue
                if bound_transform is not None:
                    result = bound_transform(selection.id, result)
                verdict = domination_report([result], estimate)[0]
                finding = None
                if not verdict.dominated:
                    finding = (
                        f"{selection.label} ({bound_statistic(result).value}) at x={estimate.x:g}: "
                        f"upper limit {verdict.ci_high:.6g} exceeds bound {verdict.bound_raw:.6g}"
                    )
                outcome.record(
                    ValidationRow(
                        check=f"domination_{statistic.value}",
                        model=label,
                        x=estimate.x,
                        bound=selection.label,
                        p_hat=verdict.p_hat,
                        ci_high=verdict.ci_high,
                        bound_raw=verdict.bound_raw,
                        dominated=verdict.dominated,
                        margin=verdict.margin,
                    ),
                    finding,
                )


def _convex_checks(config: ExperimentConfig, outcome: ValidationOutcome) -> None:
    assert config.model is not None
    run = config.run
    label = config.model_label
    for check in run.convex_tests:
        report = convex_comparison(
            config.model, check.f, run.reps, run.master_seed, check.use_max, run.threads, run.block_size
        )
        name = f"{check.f.label}/{'max' if check.use_max else 'sum'}"
        finding = None
        if not report.passes:
            finding = f"convex comparison {name}: lhs {report.lhs_hat:.6g} > rhs + 3 se {report.threshold:.6g}"
        outcome.record(
            ValidationRow(
                check="convex_comparison",
                model=label,
                x=None,
                bound=name,
                p_hat=report.lhs_hat,
                ci_high=report.threshold,
                bound_raw=report.rhs_hat,
                dominated=report.passes,
                margin=report.rhs_hat - report.lhs_hat,
            ),
            finding,
        )

        if isinstance(config.model, GaussianNegCov) and check.f.kind == ConvexKind.EXPONENTIAL and not check.use_max:
            lhs, rhs = gaussian_exponential_moments(config.model, check.f.param)
            outcome.record(
                ValidationRow(
                    check="convex_comparison_exact",
                    model=label,
                    x=None,
                    bound=name,
                    p_hat=lhs,
                    ci_high=lhs,
                    bound_raw=rhs,
                    dominated=lhs <= rhs,
                    margin=rhs - lhs,
                ),
                None if lhs <= rhs else f"exact Gaussian comparison {name}: {lhs!r} > {rhs!r}",
            )


def _supermartingale_check(config: ExperimentConfig, outcome: ValidationOutcome) -> None:
    spec = config.run.supermartingale
    if spec is None:
        return
    run = config.run
    report = supermartingale_max_moment(spec, run.reps, run.master_seed, run.threads, run.block_size)
    upper = report.lhs_hat + 3.0 * report.lhs_se
    name = f"max_moment(t={spec.t:g},sigma={spec.sigma:g},n={spec.n},alpha={spec.alpha:g})"
    outcome.record(
        ValidationRow(
            check="supermartingale",
            model="exponential_gaussian_walk",
            x=None,
            bound=name,
            p_hat=report.lhs_hat,
            ci_high=upper,
            bound_raw=report.rhs_exact,
            dominated=report.passes,
            margin=report.rhs_exact - report.lhs_hat,
        ),
        None if report.passes else f"{name}: {upper:.6g} exceeds {report.rhs_exact:.6g}",
    )


def run_validation(
    config: ExperimentConfig, bound_transform: Optional[BoundTransform] = None
) -> ValidationOutcome:
    """
    Run every check the experiment configures.

    Args:
        config: parsed experiment with a model and ``reps >= 1000``.
        bound_transform: applied to each evaluated bound before the domination
            check; a hook for injecting a corrupted bound.
    """
    config.require_validation_ready()
    outcome = ValidationOutcome()
    _domination_checks(config, outcome, bound_transform)
    _convex_checks(config, outcome)
    _supermartingale_check(config, outcome)
    logger.info(
        f"validation of {config.model_label}: {len(outcome.rows)} rows, {len(outcome.findings)} findings"
    )
    return outcome
