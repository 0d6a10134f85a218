"""
Tests for the JSON-lines and table renderings of command output.
"""

from fractions import Fraction

import orjson

from shapql.core.output import OracleStats, OutputRecord, render_json, render_table


def _make_record(**overrides) -> OutputRecord:
    values = overrides.pop("values", {"e1": Fraction(7, 12), "e2": Fraction(1, 4)})
    return OutputRecord.from_values("shapley", values, method="subset", **overrides)


class TestRenderJson:
    """One line, sorted keys, rationals as strings."""

    def test_values_are_rational_strings(self):
        payload = orjson.loads(render_json(_make_record()))
        assert payload["values"] == {"e1": "7/12", "e2": "1/4"}

    def test_keys_are_sorted_and_none_dropped(self):
        line = render_json(_make_record())
        assert "\n" not in line
        assert list(orjson.loads(line)) == sorted(orjson.loads(line))
        assert "timing_ms" not in orjson.loads(line)

    def test_decimal_view(self):
        payload = orjson.loads(render_json(_make_record(decimal=True)))
        assert payload["approx_decimal"]["e2"] == 0.25

    def test_identical_records_give_identical_bytes(self):
        assert render_json(_make_record()) == render_json(_make_record())


class TestRenderTable:
    """Aligned key/value rows."""

    def test_rows_present(self):
        text = render_table(
            _make_record(stats=OracleStats(entailment_calls=3, memo_hits=1), extra={"x": [1]})
        )
        assert "method" in text
        assert "7/12" in text
        assert "entailment_calls  3" in text
        assert "[1]" in text
