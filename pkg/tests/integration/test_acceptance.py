"""
Full-size validation runs on the three NA model families.

These use 100000 replicates per check and are marked slow.
"""

from pathlib import Path

import pytest
import yaml

from na_bounds.core.experiment import ExperimentConfig
from na_bounds.core.registry import evaluate_bound
from na_bounds.core.validation import run_validation

ACCEPTANCE = Path(__file__).resolve().parents[2] / "configs" / "acceptance.yaml"

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def acceptance_data():
    return yaml.safe_load(ACCEPTANCE.read_text())


def _model_variant(data, model):
    variant = dict(data)
    variant["model"] = model
    variant["bounds"] = ["fuk_pth"]
    variant["run"] = {k: v for k, v in data["run"].items() if k not in ("out", "supermartingale")}
    return ExperimentConfig.from_dict(variant)


class TestAcceptance:
    def test_population_matrix(self, acceptance_data):
        config = ExperimentConfig.from_dict(acceptance_data)
        outcome = run_validation(config)
        assert outcome.passed, outcome.findings
        domination = [row for row in outcome.rows if row.check.startswith("domination")]
        # six maximal bounds and one final-sum bound at three points each
        assert len(domination) == 21
        assert not outcome.skipped

    def test_reference_values(self, acceptance_data):
        summary = ExperimentConfig.from_dict(acceptance_data).summary()
        assert evaluate_bound("bernstein_sharp", 15.0, summary).raw_value == pytest.approx(0.447, abs=0.005)
        assert evaluate_bound("rio_closed", 15.0, summary).raw_value == pytest.approx(0.324, abs=0.002)
        assert evaluate_bound("hoeffding_azuma", 15.0, summary).raw_value == pytest.approx(0.105, abs=0.001)

    def test_multinomial_counts(self, acceptance_data):
        config = _model_variant(acceptance_data, {"kind": "multinomial_counts", "trials": 100, "probs": [0.1] * 10})
        outcome = run_validation(config)
        assert outcome.passed, outcome.findings

    def test_negatively_correlated_gaussian(self, acceptance_data):
        config = _model_variant(acceptance_data, {"kind": "gaussian_neg_cov", "n": 50, "rho": -0.01})
        outcome = run_validation(config)
        assert outcome.passed, outcome.findings
        assert any(row.check == "convex_comparison_exact" for row in outcome.rows)
