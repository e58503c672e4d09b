"""Tests for the report writers."""

import numpy as np
import pytest

from na_bounds.core.errors import ConfigurationError
from na_bounds.core.registry import evaluate_bound, rank_results
from na_bounds.formats import SWEEP_COLUMNS, ComparisonTableFormatter, CsvFormatter, comparison_rows, write_atomic
from na_bounds.types import Statistic


class TestCsvFormatter:
    def test_header_only(self):
        assert CsvFormatter(SWEEP_COLUMNS).format([]) == "x,bound,alpha,y,raw_value,clipped_value\n"

    def test_cells(self):
        formatter = CsvFormatter(["a", "b", "c", "d", "e", "f"])
        text = formatter.format([[None, 0.1, True, False, np.float64(0.5), np.int64(3)]])
        assert text.splitlines()[1] == ",0.10000000000000001,true,false,0.5,3"

    def test_special_values(self):
        formatter = CsvFormatter(["a", "b", "c", "d"])
        row = formatter.format([[float("inf"), float("-inf"), float("nan"), Statistic.FINAL_SUM]]).splitlines()[1]
        assert row == "inf,-inf,nan,FinalSum"

    def test_fewer_digits(self):
        assert CsvFormatter(["a"], digits=6).format([[1.0 / 3.0]]).splitlines()[1] == "0.333333"

    def test_row_length_checked(self):
        with pytest.raises(ValueError):
            CsvFormatter(["a", "b"]).format([[1]])

    def test_digits_validated(self):
        with pytest.raises(ConfigurationError):
            CsvFormatter(["a"], digits=18)

    def test_unix_line_endings(self, tmp_path):
        path = CsvFormatter(["a"]).write([[1], [2]], tmp_path / "out.csv")
        assert path.read_bytes() == b"a\n1\n2\n"


class TestWriteAtomic:
    def test_creates_parents_and_leaves_no_temp_file(self, tmp_path):
        target = tmp_path / "reports" / "sweep.csv"
        write_atomic(target, "x\n")
        assert target.read_text() == "x\n"
        assert sorted(p.name for p in target.parent.iterdir()) == ["sweep.csv"]

    def test_failure_leaves_target_absent(self, tmp_path):
        target = tmp_path / "sweep.csv"
        with pytest.raises(TypeError):
            write_atomic(target, 123)  # type: ignore[arg-type]
        assert not target.exists()
        assert list(tmp_path.iterdir()) == []

    def test_failure_keeps_previous_content(self, tmp_path):
        target = tmp_path / "sweep.csv"
        target.write_text("old\n")
        with pytest.raises(TypeError):
            write_atomic(target, None)  # type: ignore[arg-type]
        assert target.read_text() == "old\n"


class TestComparisonTable:
    def test_rows_and_table(self, rademacher_summary):
        sharp = evaluate_bound("bernstein_sharp", 10.0, rademacher_summary)
        simple = evaluate_bound("bernstein_simple", 10.0, rademacher_summary)
        rows = comparison_rows(10.0, rank_results([("simple", simple), ("sharp", sharp)]))
        assert rows[0][2] == "sharp"
        assert rows[0][6] == "tightest"
        assert rows[1][6] == ""

        text = ComparisonTableFormatter().format(rows)
        assert "Bound Comparison" in text
        assert "tightest" in text
        assert "sharp" in text
