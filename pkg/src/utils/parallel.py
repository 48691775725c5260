"""Chunked thread-pool mapping with fixed-order results."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from ..config.defaults import RUNTIME_CONFIG

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_thread_count: Optional[int] = None


def configure_threads(threads: Optional[int] = None) -> int:
    """Set the worker count: explicit value, then OPCONTOUR_THREADS, then 1."""
    global _thread_count
    if threads is None:
        env = os.getenv("OPCONTOUR_THREADS")
        threads = int(env) if env else RUNTIME_CONFIG["threads"]
    _thread_count = max(1, int(threads))
    logger.debug("worker threads: %d", _thread_count)
    return _thread_count


def get_thread_count() -> int:
    if _thread_count is None:
        return configure_threads()
    return _thread_count


def chunk_ranges(total: int, chunk_size: int) -> List[range]:
    """Split range(total) into consecutive chunks of fixed size."""
    chunk_size = max(1, int(chunk_size))
    return [range(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def ordered_map(func: Callable[[T], R], items: Sequence[T]) -> List[R]:
    """Apply ``func`` to every item, returning results in input order.

    Chunking is done by the caller and never depends on the thread count, so
    reducing the returned list left to right gives identical floating-point
    results for any number of workers.
    """
    threads = get_thread_count()
    if threads == 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(func, items))
