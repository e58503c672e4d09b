"""
Tests for the validation matrix.
"""

import pytest

from na_bounds.core.errors import ConfigurationError
from na_bounds.core.experiment import ExperimentConfig
from na_bounds.core.validation import VALIDATION_COLUMNS, run_validation


def load(data):
    return ExperimentConfig.from_dict(data)


class TestRunValidation:
    def test_passes_on_valid_bounds(self, make_experiment):
        outcome = run_validation(load(make_experiment()))
        assert outcome.passed
        assert [row.check for row in outcome.rows] == ["domination_MaxPrefix"] * 3
        assert all(row.dominated for row in outcome.rows)
        assert len(outcome.rows[0].as_list()) == len(VALIDATION_COLUMNS)

    def test_corrupted_bound_is_reported(self, make_experiment):
        outcome = run_validation(load(make_experiment()), bound_transform=lambda _, r: r.scaled(1e-6))
        assert not outcome.passed
        assert len(outcome.findings) == 3
        assert "bernstein_sharp (MaxPrefix)" in outcome.findings[0]

    def test_function_bounds_and_inapplicable_bounds_skipped(self, make_experiment):
        data = make_experiment()
        data["bounds"] = ["bennett", "rio_closed"]
        outcome = run_validation(load(data))
        assert outcome.passed
        assert "bennett" in outcome.skipped
        assert outcome.rows[0].check == "skipped"

    def test_out_of_domain_point_skipped(self, make_experiment):
        data = make_experiment(x_grid=[5.0, 150.0])
        data["bounds"] = ["rio_closed"]
        outcome = run_validation(load(data))
        assert outcome.passed
        assert [row.check for row in outcome.rows] == ["domination_MaxPrefix", "skipped"]
        assert "DOMAIN_VIOLATION" in outcome.rows[1].bound

    def test_final_sum_bounds_use_final_sum(self, make_experiment):
        data = make_experiment()
        data["bounds"] = ["hoeffding_azuma"]
        outcome = run_validation(load(data))
        assert outcome.passed
        assert {row.check for row in outcome.rows} == {"domination_FinalSum"}

    def test_convex_and_supermartingale_checks(self, make_experiment):
        data = make_experiment(
            convex_tests=[{"kind": "exponential", "t": 0.2}, {"kind": "shifted_square", "a": 1.0, "use_max": True}],
            supermartingale={"t": 0.5, "n": 50, "alpha": 0.5},
        )
        outcome = run_validation(load(data))
        checks = [row.check for row in outcome.rows]
        assert checks.count("convex_comparison") == 2
        assert checks[-1] == "supermartingale"
        assert outcome.passed

    def test_gaussian_model_records_exact_comparison(self):
        data = {
            "model": {"kind": "gaussian_neg_cov", "n": 10, "rho": -0.05},
            "bounds": ["fuk_pth", "rio_closed"],
            "run": {"x_grid": [4.0], "reps": 5000, "master_seed": 3, "convex_tests": [{"kind": "exponential", "t": 0.2}]},
        }
        outcome = run_validation(load(data))
        checks = [row.check for row in outcome.rows]
        assert "convex_comparison_exact" in checks
        assert outcome.skipped["rio_closed"].startswith("range")
        assert outcome.passed

    def test_needs_model(self):
        data = {"distributions": [{"kind": "uniform", "a": -1, "b": 1}], "run": {"x_grid": [0.5], "reps": 5000}}
        with pytest.raises(ConfigurationError):
            run_validation(load(data))
