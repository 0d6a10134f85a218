"""
Thread-pool helpers.

Work is split into index ranges, executed with ``as_completed`` and merged
back in chunk order, so callers see the same sequence for any worker count.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import TypeVar

from shapql.core.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        return max(1, settings.THREADS)
    return max(1, threads)


def chunk_ranges(total: int, parts: int) -> list[range]:
    """Split ``range(total)`` into at most ``parts`` contiguous non-empty ranges."""
    if total <= 0:
        return []

    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    ranges = []
    start = 0
    for index in range(parts):
        size = base + (1 if index < extra else 0)
        ranges.append(range(start, start + size))
        start += size
    return ranges


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    threads: int | None = None,
) -> list[R]:
    """Apply ``fn`` to every item, returning results in input order."""
    workers = resolve_threads(threads)

    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]

    results: list[R | None] = [None] * len(items)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()

    logger.debug(f"parallel_map finished {len(items)} chunks on {workers} workers")
    return results  # type: ignore[return-value]
