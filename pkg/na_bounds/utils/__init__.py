"""Utility modules for na_bounds."""

from .thread_pool import SharedThreadPool, map_ordered, shutdown_shared_pool
from .version import __version__

__all__ = [
    "SharedThreadPool",
    "map_ordered",
    "shutdown_shared_pool",
    "__version__",
]
