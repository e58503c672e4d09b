"""
Report writers for na_bounds.

Every writer shares the BaseFormatter interface; files are written atomically.
"""

from na_bounds.formats.base import BaseFormatter, write_atomic
from na_bounds.formats.csv import SWEEP_COLUMNS, CsvFormatter
from na_bounds.formats.table import ComparisonTableFormatter, comparison_rows

__all__ = [
    "BaseFormatter",
    "write_atomic",
    "CsvFormatter",
    "SWEEP_COLUMNS",
    "ComparisonTableFormatter",
    "comparison_rows",
]
