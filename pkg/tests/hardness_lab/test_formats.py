"""
Tests for the digraph and bipartite line formats.
"""

import pytest

from shapql.core.exceptions import ParseError
from shapql.modules.hardness_lab.formats import (
    parse_bipartite,
    parse_digraph,
    serialize_bipartite,
    serialize_digraph,
)
from tests.factories import DATA_DIR, TRIANGLE, make_bipartite


class TestDigraph:
    def test_triangle_file(self):
        g = parse_digraph((DATA_DIR / "triangle.dg").read_text(encoding="utf-8"))
        assert g == TRIANGLE

    def test_serialized_form_parses_back(self):
        assert parse_digraph(serialize_digraph(TRIANGLE)) == TRIANGLE

    def test_missing_target(self):
        with pytest.raises(ParseError, match="missing"):
            parse_digraph("s s\n")

    def test_edge_before_header(self):
        with pytest.raises(ParseError) as info:
            parse_digraph("s s\na b\nt t\n")
        assert info.value.details["line"] == 2

    def test_three_tokens(self):
        with pytest.raises(ParseError, match="expected 'v w'"):
            parse_digraph("s s\nt t\ns a t\n")

    def test_bad_vertex_name(self):
        with pytest.raises(ParseError, match="bad vertex"):
            parse_digraph("s s\nt t\ns a-b\n")

    def test_duplicate_edge(self):
        with pytest.raises(ParseError, match="Duplicate edge"):
            parse_digraph("s s\nt t\ns t\ns t\n")


class TestBipartite:
    def test_k22_file(self):
        g = parse_bipartite((DATA_DIR / "k22.bg").read_text(encoding="utf-8"))
        assert g.x == ("x1", "x2") and g.y == ("y1", "y2")
        assert len(g.edges) == 4

    def test_serialized_form_parses_back(self):
        g = make_bipartite(x=["x1"], y=["y1", "y2"], edges=[("x1", "y2")])
        assert parse_bipartite(serialize_bipartite(g)) == g

    def test_edge_from_y(self):
        with pytest.raises(ParseError, match="from X to Y"):
            parse_bipartite("X: x1\nY: y1\ny1 x1\n")

    def test_shared_vertex(self):
        with pytest.raises(ParseError, match="disjoint"):
            parse_bipartite("X: v\nY: v\n")

    def test_missing_part(self):
        with pytest.raises(ParseError):
            parse_bipartite("X: x1\n")
