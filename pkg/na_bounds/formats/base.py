"""
Base formatter class for all report formats.
"""

import contextlib
import logging
import os
import tempfile
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

logger = logging.getLogger(__name__)

Row = Sequence[Any]


def write_atomic(path: Union[str, Path], content: str) -> Path:
    """
    Write ``content`` to ``path`` through a sibling temp file and a rename.

    Readers never see a half-written report; on failure the temp file is removed
    and ``path`` is left untouched.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp_name)
        raise
    logger.debug(f"wrote {len(content)} characters to {path}")
    return path


class BaseFormatter(ABC):
    """Abstract base class for report formatters."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize formatter with configuration.

        Args:
            config: Format-specific configuration options
        """
        self.config = config or {}

    @abstractmethod
    def format(self, rows: Sequence[Row]) -> str:
        """
        Render rows as one report.

        Args:
            rows: Report rows, each a sequence of cell values

        Returns:
            The rendered report
        """

    @abstractmethod
    def get_file_extension(self) -> str:
        """
        Get the file extension for this format.

        Returns:
            File extension including the dot (e.g., ".csv")
        """

    def write(self, rows: Sequence[Row], path: Union[str, Path]) -> Path:
        """Render ``rows`` and write them atomically to ``path``."""
        return write_atomic(path, self.format(rows))
