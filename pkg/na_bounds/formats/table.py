"""
Rich table of bounds ranked per x.
"""

import io
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.table import Table

from na_bounds.core.registry import RankedBound
from na_bounds.formats.base import BaseFormatter, Row

COMPARISON_COLUMNS = ["x", "rank", "bound", "family", "raw_value", "clipped_value", "note"]


def comparison_rows(x: float, ranked: Sequence[RankedBound]) -> List[Row]:
    """Flatten one x's ranking into table rows."""
    rows: List[Row] = []
    for entry in ranked:
        notes = []
        if entry.tightest:
            notes.append("tightest")
        if entry.tied:
            notes.append("tie")
        rows.append(
            [
                x,
                entry.rank,
                entry.label,
                entry.result.family.value,
                entry.result.raw_value,
                entry.result.clipped_value,
                ", ".join(notes),
            ]
        )
    return rows


class ComparisonTableFormatter(BaseFormatter):
    """Formatter for the ranked-bound comparison table."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__(config)
        self.width = int(self.config.get("width", 120))

    def build_table(self, rows: Sequence[Row]) -> Table:
        table = Table(title=" Bound Comparison", show_header=True, header_style="bold magenta")
        table.add_column("x", style="cyan", justify="right")
        table.add_column("Rank", justify="right")
        table.add_column("Bound", style="cyan", no_wrap=True)
        table.add_column("Family")
        table.add_column("Raw", justify="right", style="green")
        table.add_column("Clipped", justify="right")
        table.add_column("Note", style="bold yellow")

        previous_x = None
        for x, rank, label, family, raw, clipped, note in rows:
            if previous_x is not None and x != previous_x:
                table.add_section()
            previous_x = x
            style = "bold" if "tightest" in note else None
            table.add_row(f"{x:g}", str(rank), label, family, f"{raw:.6e}", f"{clipped:.6g}", note, style=style)
        return table

    def format(self, rows: Sequence[Row]) -> str:
        console = Console(file=io.StringIO(), width=self.width, color_system=None, record=True)
        console.print(self.build_table(rows))
        return console.export_text()

    def get_file_extension(self) -> str:
        return ".txt"
