"""
Tests for deterministic chunking and the thread-pool map.
"""

import pytest

from shapql.core.concurrency import chunk_ranges, parallel_map, resolve_threads


class TestChunkRanges:
    """Contiguous, non-empty, covering ranges."""

    @pytest.mark.parametrize("total, parts", [(10, 3), (3, 8), (1, 1), (16, 4)])
    def test_ranges_cover_everything_once(self, total, parts):
        ranges = chunk_ranges(total, parts)
        assert [i for r in ranges for i in r] == list(range(total))
        assert all(len(r) > 0 for r in ranges)
        assert len(ranges) == min(parts, total)

    def test_empty_total(self):
        assert chunk_ranges(0, 4) == []


class TestParallelMap:
    """Results keep input order for any worker count."""

    @pytest.mark.parametrize("threads", [1, 2, 5])
    def test_order_preserved(self, threads):
        items = list(range(20))
        assert parallel_map(lambda x: x * x, items, threads) == [x * x for x in items]

    def test_resolve_threads_floors_at_one(self):
        assert resolve_threads(0) == 1
        assert resolve_threads(4) == 4
