"""
Options and helpers shared by every command.
"""

import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager
import click

from shapql.core.output import OutputRecord, emit


def chase_depth_option(fn: Callable) -> Callable:
    return click.option(
        "--chase-depth",
        type=click.IntRange(min=0),
        default=None,
        help="Chase depth; defaults to query atoms + TBox concept names.",
    )(fn)


def threads_option(fn: Callable) -> Callable:
    return click.option(
        "--threads",
        type=click.IntRange(min=1),
        default=None,
        help="Worker threads (falls back to SHAPQL_THREADS).",
    )(fn)


def output_options(fn: Callable) -> Callable:
    for option in reversed(
        [
            click.option("--table", is_flag=True, help="Aligned human-readable output."),
            click.option("--decimal", is_flag=True, help="Add approximate decimal values."),
            click.option("--timing", is_flag=True, help="Report wall-clock time."),
        ]
    ):
        fn = option(fn)
    return fn


class Stopwatch:
    def __init__(self):
        self.elapsed_ms: float | None = None


@contextmanager
def stopwatch() -> Iterator[Stopwatch]:
    watch = Stopwatch()
    start = time.perf_counter()
    try:
        yield watch
    finally:
        watch.elapsed_ms = (time.perf_counter() - start) * 1000


def finish(
    record: OutputRecord, *, table: bool, timing: bool, watch: Stopwatch | None = None
) -> None:
    if timing and watch is not None:
        record.timing_ms = watch.elapsed_ms
    emit(record, table=table)
