"""
Tests for the graph encodings and the s-t connectedness pipeline.
"""

from fractions import Fraction

import pytest

from shapql.core.exceptions import SizeLimitError, ValidationError
from shapql.modules.hardness_lab.reductions import (
    GRAPH_ENCODINGS,
    build_Gi,
    count_st_subgraphs_brute,
    count_st_subgraphs_via_shapley,
    edge_value_vector,
    encoding_vectors,
    reachability_game,
)
from tests.factories import TRIANGLE, make_digraph, random_digraph

TRIANGLE_VECTOR = (Fraction(1, 6), Fraction(1, 6), Fraction(2, 3))


# ── encodings ──────────────────────────────────────────────────────


class TestEncodings:
    """The five encodings give the same per-edge values."""

    def test_reachability_values(self, reasoner):
        vector = edge_value_vector(reachability_game(TRIANGLE), reasoner=reasoner)
        assert vector == TRIANGLE_VECTOR

    @pytest.mark.parametrize("name", sorted(GRAPH_ENCODINGS))
    def test_each_encoding(self, name, reasoner):
        encoding = GRAPH_ENCODINGS[name](TRIANGLE)
        assert len(encoding.edge_players) == TRIANGLE.m
        assert edge_value_vector(encoding, reasoner=reasoner) == TRIANGLE_VECTOR

    @pytest.mark.parametrize("seed", range(20))
    def test_random_graphs_agree(self, seed, reasoner):
        vectors = encoding_vectors(random_digraph(seed, max_edges=6), reasoner=reasoner)
        reference = vectors["reachability"]
        assert all(vector == reference for vector in vectors.values())


# ── G_i construction ───────────────────────────────────────────────


class TestBuildGi:
    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_shape(self, i):
        gi, mu = build_Gi(TRIANGLE, i)
        assert gi.m == TRIANGLE.m + i + 1
        assert mu == ("s_1", "t")
        assert gi.source == "s_1"
        assert gi.edges[-1] == mu

    def test_fresh_names_avoid_existing_vertices(self):
        g = make_digraph(edges=[("s", "s_1"), ("s_1", "t")])
        gi, mu = build_Gi(g, 2)
        assert mu[0] not in g.vertices
        assert len(set(gi.vertices)) == len(gi.vertices)

    def test_i_must_be_positive(self):
        with pytest.raises(ValidationError):
            build_Gi(TRIANGLE, 0)


# ── counting ───────────────────────────────────────────────────────


class TestStCount:
    """Connecting edge subsets, recovered from one Shapley value per G_i."""

    def test_triangle(self, reasoner):
        assert count_st_subgraphs_brute(TRIANGLE) == 5
        assert count_st_subgraphs_via_shapley(TRIANGLE, reasoner=reasoner) == 5

    def test_no_path(self, reasoner):
        g = make_digraph(edges=[("s", "a"), ("b", "t")])
        assert count_st_subgraphs_via_shapley(g, reasoner=reasoner) == 0

    def test_edgeless(self):
        assert count_st_subgraphs_via_shapley(make_digraph(edges=[])) == 0

    def test_source_is_target(self):
        g = make_digraph(edges=[("s", "a"), ("a", "s")], target="s")
        assert count_st_subgraphs_via_shapley(g) == count_st_subgraphs_brute(g) == 4

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_brute_force(self, seed, reasoner):
        g = random_digraph(100 + seed, max_edges=8)
        assert count_st_subgraphs_via_shapley(g, reasoner=reasoner, threads=2) == (
            count_st_subgraphs_brute(g)
        )

    def test_edge_limit(self):
        with pytest.raises(SizeLimitError):
            count_st_subgraphs_via_shapley(TRIANGLE, limit=2)

    def test_zero_limit_is_honoured(self):
        with pytest.raises(SizeLimitError):
            count_st_subgraphs_brute(TRIANGLE, limit=0)
        with pytest.raises(SizeLimitError):
            count_st_subgraphs_via_shapley(TRIANGLE, limit=0)
