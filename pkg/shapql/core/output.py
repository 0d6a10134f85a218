"""
Machine-readable command output.

Every command produces one OutputRecord, written as a single JSON line with
sorted keys so identical runs give identical bytes. ``--table`` switches to
an aligned human view of the same record.
"""

from fractions import Fraction
from typing import Any

import click
import orjson
from pydantic import BaseModel, Field

from shapql.core.validators import format_rational


class OracleStats(BaseModel):
    entailment_calls: int = 0
    memo_hits: int = 0


class OutputRecord(BaseModel):
    command: str
    values: dict[str, str] = Field(default_factory=dict)
    method: str | None = None
    seed: int | None = None
    samples: int | None = None
    stats: OracleStats = Field(default_factory=OracleStats)
    extra: dict[str, Any] = Field(default_factory=dict)
    approx_decimal: dict[str, float] | None = None
    timing_ms: float | None = None

    @classmethod
    def from_values(
        cls,
        command: str,
        values: dict[str, Fraction],
        *,
        decimal: bool = False,
        **kwargs: Any,
    ) -> "OutputRecord":
        record = cls(
            command=command,
            values={key: format_rational(value) for key, value in values.items()},
            **kwargs,
        )
        if decimal:
            record.approx_decimal = {key: float(value) for key, value in values.items()}
        return record


def render_json(record: OutputRecord) -> str:
    payload = record.model_dump(exclude_none=True)
    return orjson.dumps(payload, option=orjson.OPT_SORT_KEYS).decode()


def render_table(record: OutputRecord) -> str:
    rows: list[tuple[str, str]] = [("command", record.command)]
    if record.method:
        rows.append(("method", record.method))
    if record.seed is not None:
        rows.append(("seed", str(record.seed)))
    if record.samples is not None:
        rows.append(("samples", str(record.samples)))

    for key, value in record.values.items():
        approx = ""
        if record.approx_decimal and key in record.approx_decimal:
            approx = f"  ~{record.approx_decimal[key]:.6f}"
        rows.append((key, value + approx))

    for key, value in sorted(record.extra.items()):
        rendered = value if isinstance(value, str) else orjson.dumps(value).decode()
        rows.append((key, rendered))

    rows.append(("entailment_calls", str(record.stats.entailment_calls)))
    rows.append(("memo_hits", str(record.stats.memo_hits)))
    if record.timing_ms is not None:
        rows.append(("timing_ms", f"{record.timing_ms:.1f}"))

    width = max(len(key) for key, _ in rows)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows)


def emit(record: OutputRecord, *, table: bool = False) -> None:
    click.echo(render_table(record) if table else render_json(record))
