"""
Shared thread pool for Monte Carlo replicate blocks.

Blocks are pure functions of their index, so results are collected in block
order and never depend on how many workers ran them.
"""

import logging
import threading
from concurrent.futures import Future, ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class SharedThreadPool:
    """
    Singleton thread pool reused across Monte Carlo runs.

    The pool is recreated only when a caller asks for a different worker count.
    Every read or replacement of the executor happens under ``_lock``.
    """

    _instance: Optional["SharedThreadPool"] = None
    _executor: Optional[ThreadPoolExecutor] = None
    _workers: int = 0
    _lock = threading.Lock()

    def __new__(cls) -> "SharedThreadPool":
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def get_executor(cls, max_workers: int) -> ThreadPoolExecutor:
        """
        Get the shared executor with exactly ``max_workers`` threads.

        Args:
            max_workers: Number of worker threads.

        Returns:
            Shared ThreadPoolExecutor instance
        """
        with cls._lock:
            return cls._sized_executor(max_workers)

    @classmethod
    def submit_all(cls, fn: Callable[[T], R], items: Iterable[T], max_workers: int) -> List["Future[R]"]:
        """
        Submit ``fn`` for every item on the shared executor.

        Submission holds the lock, so a concurrent resize waits for these
        futures instead of shutting the executor down underneath them.
        """
        with cls._lock:
            executor = cls._sized_executor(max_workers)
            return [executor.submit(fn, item) for item in items]

    @classmethod
    def shutdown(cls, wait: bool = True) -> None:
        """
        Shutdown the shared thread pool.

        Args:
            wait: If True, wait for all threads to complete
        """
        with cls._lock:
            cls._shutdown_locked(wait)

    @classmethod
    def resize_pool(cls, max_workers: int) -> ThreadPoolExecutor:
        """
        Resize the thread pool by recreating it with new worker count.

        Args:
            max_workers: New maximum number of worker threads

        Returns:
            New ThreadPoolExecutor instance with updated worker count
        """
        with cls._lock:
            cls._shutdown_locked(wait=True)
            return cls._sized_executor(max_workers)

    @classmethod
    def _sized_executor(cls, max_workers: int) -> ThreadPoolExecutor:
        # caller holds _lock
        if cls._executor is None or cls._workers != max_workers:
            cls._shutdown_locked(wait=True)
            cls._executor = ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="NABounds")
            cls._workers = max_workers
            logger.debug(f"shared pool sized to {max_workers} workers")
        return cls._executor

    @classmethod
    def _shutdown_locked(cls, wait: bool) -> None:
        if cls._executor is not None:
            cls._executor.shutdown(wait=wait)
            cls._executor = None
            cls._workers = 0


def map_ordered(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply ``fn`` to every item, returning results in input order.

    With one worker the items run inline on the calling thread.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return [future.result() for future in SharedThreadPool.submit_all(fn, items, workers)]


def shutdown_shared_pool(wait: bool = True) -> None:
    """
    Convenience function to shutdown the shared thread pool.

    Args:
        wait: If True, wait for all threads to complete
    """
    SharedThreadPool.shutdown(wait)
