"""
CSV writer for sweeps and validation reports.

Numbers use 17 significant digits so every float round-trips, empty cells
mark values that do not apply, and lines end in ``\\n`` on every platform.
"""

import csv
import io
import math
from enum import Enum
from typing import Any, Dict, Optional, Sequence

import numpy as np

from na_bounds.core.errors import config_validation_error
from na_bounds.formats.base import BaseFormatter, Row

SWEEP_COLUMNS = ["x", "bound", "alpha", "y", "raw_value", "clipped_value"]


class CsvFormatter(BaseFormatter):
    """Formatter for fixed-column CSV output."""

    def __init__(self, columns: Sequence[str], digits: int = 17, config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        if not 1 <= digits <= 17:
            raise config_validation_error("csv_digits", digits, "must lie in [1, 17]")
        self.columns = list(columns)
        self.digits = digits

    def cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (int, np.integer)):
            return str(value)
        if isinstance(value, (float, np.floating)):
            if math.isnan(value):
                return "nan"
            if math.isinf(value):
                return "inf" if value > 0 else "-inf"
            return format(float(value), f".{self.digits}g")
        if isinstance(value, Enum):
            return str(value.value)
        return str(value)

    def format(self, rows: Sequence[Row]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row has {len(row)} cells, expected {len(self.columns)}")
            writer.writerow([self.cell(v) for v in row])
        return buffer.getvalue()

    def get_file_extension(self) -> str:
        return ".csv"
