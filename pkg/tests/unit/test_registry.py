"""
Unit tests for the bound registry and parameter resolution.
"""

import math

import pytest

from na_bounds.core.errors import ConfigurationError, DomainError
from na_bounds.core.moments import CenteredGaussian, moment_summary
from na_bounds.core.registry import (
    BOUND_REGISTRY,
    BoundSelection,
    applicable_bounds,
    evaluate_bound,
    get_bound_spec,
    rank_results,
    safe_evaluate,
    validate_params,
)
from na_bounds.types import BoundFamily, Statistic


class TestRegistry:
    def test_catalog(self):
        expected = {
            "h_n",
            "bennett",
            "bernstein_b1",
            "fuk_nagaev_h",
            "fuk_nagaev_bennett",
            "fuk_nagaev_bernstein",
            "weak_moment",
            "fuk_pth",
            "semi_exp_piecewise",
            "semi_exp_smoothed",
            "exp_moment",
            "exp_moment_final_sum",
            "bernstein_sharp",
            "bernstein_simple",
            "rio_young",
            "rio_closed",
            "rio_delta",
            "rio_delta_relaxed",
            "hoeffding_azuma",
        }
        assert set(BOUND_REGISTRY) == expected

    def test_statistics(self):
        assert get_bound_spec("hoeffding_azuma").statistic == Statistic.FINAL_SUM
        assert get_bound_spec("exp_moment_final_sum").statistic == Statistic.FINAL_SUM
        assert get_bound_spec("rio_young").statistic == Statistic.MAX_PREFIX
        assert get_bound_spec("bennett").statistic is None

    def test_unknown_id(self):
        with pytest.raises(ConfigurationError) as exc:
            get_bound_spec("chernoff")
        assert exc.value.error_code == "CONFIG_INVALID"

    def test_parameter_validation(self):
        with pytest.raises(ConfigurationError):
            validate_params("bernstein_sharp", {"beta": 1.0})
        with pytest.raises(ConfigurationError):
            validate_params("bernstein_sharp", {"alpha": "best"})
        with pytest.raises(ConfigurationError):
            validate_params("weak_moment", {"y": "optimal"})
        validate_params("weak_moment", {"alpha": "auto", "y": "default", "p": 3})

    def test_selection_label(self):
        assert BoundSelection("rio_young").label == "rio_young"
        assert BoundSelection("rio_young", {"label": "young"}).label == "young"


class TestEvaluation:
    def test_closed_form_at_zero(self, rademacher_summary):
        assert evaluate_bound("rio_closed", 0.0, rademacher_summary).raw_value == 1.0

    def test_acceptance_values(self, rademacher_summary):
        s = rademacher_summary
        assert evaluate_bound("bernstein_sharp", 5.0, s).raw_value == pytest.approx(1.64, abs=0.01)
        assert evaluate_bound("bernstein_sharp", 15.0, s).raw_value == pytest.approx(0.447, abs=0.005)
        assert evaluate_bound("hoeffding_azuma", 15.0, s).raw_value == pytest.approx(0.105, abs=0.001)
        assert evaluate_bound("rio_closed", 15.0, s).raw_value == pytest.approx(0.324, abs=0.002)
        assert evaluate_bound("fuk_pth", 15.0, s).raw_value == pytest.approx(2.16, abs=0.01)

    def test_sharp_below_simple(self, rademacher_summary):
        for x in (1.0, 5.0, 10.0, 30.0):
            sharp = evaluate_bound("bernstein_sharp", x, rademacher_summary).raw_value
            simple = evaluate_bound("bernstein_simple", x, rademacher_summary).raw_value
            assert sharp <= simple * (1.0 + 1e-12)

    def test_auto_alpha_never_worse(self, rademacher_summary):
        fixed = evaluate_bound("bernstein_simple", 20.0, rademacher_summary, {"alpha": 0.5})
        auto = evaluate_bound("bernstein_simple", 20.0, rademacher_summary, {"alpha": "auto"})
        assert auto.raw_value <= fixed.raw_value * (1.0 + 1e-12)
        assert auto.chosen_params["alpha_rule"] == "auto"
        assert 0.0 < auto.chosen_params["alpha"] < 1.0

    def test_default_truncation(self, rademacher_summary):
        result = evaluate_bound("weak_moment", 10.0, rademacher_summary)
        assert result.chosen_params["y_rule"] == "DefaultRule"
        assert result.chosen_params["y"] == pytest.approx(30.0 / (8.0 * math.log(50)), rel=1e-14)

    def test_scanned_truncation_never_worse(self, rademacher_summary):
        default = evaluate_bound("weak_moment", 10.0, rademacher_summary)
        scanned = evaluate_bound("weak_moment", 10.0, rademacher_summary, {"y": "auto"})
        assert scanned.raw_value <= default.raw_value * (1.0 + 1e-12)
        assert scanned.chosen_params["y_rule"] == "NumericScan"

    def test_overrides(self, rademacher_summary):
        result = evaluate_bound("bernstein_sharp", 5.0, rademacher_summary, {"M": 1.0, "B_n": 10.0})
        assert result.inputs["M"] == 1.0
        assert result.inputs["B_n"] == 10.0

    def test_small_k_n_override(self, rademacher_summary):
        with pytest.raises(DomainError):
            evaluate_bound("semi_exp_piecewise", 1.0, rademacher_summary, {"K_n": 0.5})

    def test_final_sum_bound_marks_statistic(self, rademacher_summary):
        result = evaluate_bound("exp_moment_final_sum", 10.0, rademacher_summary)
        assert result.chosen_params["statistic"] == "FinalSum"
        assert result.family == BoundFamily.EXP_MOMENT

    def test_fuk_nagaev_uses_truncated_variance(self, rademacher_summary):
        result = evaluate_bound("fuk_nagaev_bennett", 10.0, rademacher_summary, {"y": 0.5})
        assert result.inputs["B_n_y"] == 25.0
        assert result.inputs["tail_term"] == 25.0


class TestApplicability:
    def test_gaussian_skips_bounded_families(self):
        summary = moment_summary([CenteredGaussian(1.0)] * 5)
        selections = [BoundSelection(i) for i in ("rio_young", "bernstein_sharp", "fuk_pth", "hoeffding_azuma")]
        applicable, skipped = applicable_bounds(summary, selections)
        assert [s.id for s in applicable] == ["fuk_pth"]
        assert skipped["rio_young"].startswith("range")
        assert skipped["bernstein_sharp"].startswith("bernstein_M")

    def test_override_makes_bound_applicable(self):
        summary = moment_summary([CenteredGaussian(1.0)] * 5)
        applicable, skipped = applicable_bounds(summary, [BoundSelection("bernstein_sharp", {"M": 1.0})])
        assert len(applicable) == 1
        assert not skipped

    def test_safe_evaluate_turns_domain_errors_into_reasons(self, rademacher_summary):
        result, reason = safe_evaluate(BoundSelection("rio_closed"), 150.0, rademacher_summary)
        assert result is None
        assert reason.startswith("DOMAIN_VIOLATION")

    def test_safe_evaluate_keeps_configuration_errors(self, rademacher_summary):
        with pytest.raises(ConfigurationError):
            safe_evaluate(BoundSelection("rio_closed", {"alpha": "best"}), 1.0, rademacher_summary)


class TestRanking:
    def test_identical_bounds_tie(self, rademacher_summary):
        a = evaluate_bound("bernstein_sharp", 10.0, rademacher_summary)
        ranked = rank_results([("first", a), ("second", a)])
        assert [r.rank for r in ranked] == [1, 1]
        assert all(r.tied and r.tightest for r in ranked)

    def test_sharp_ranks_first(self, rademacher_summary):
        sharp = evaluate_bound("bernstein_sharp", 10.0, rademacher_summary)
        simple = evaluate_bound("bernstein_simple", 10.0, rademacher_summary)
        ranked = rank_results([("simple", simple), ("sharp", sharp)])
        assert ranked[0].label == "sharp"
        assert ranked[0].tightest and not ranked[0].tied
        assert ranked[1].rank == 2
