"""
Tests for path fixtures, interface classification and splittability.
"""

from itertools import combinations

import pytest

from shapql.core.exceptions import FixtureError
from shapql.modules.hardness_lab.interfaces import (
    classify_interface,
    count_splittable_interfaces,
    find_unsplittable_interface,
    is_minimal_support,
    is_splittable,
    require_interface,
    splittable_interfaces,
)
from shapql.modules.hardness_lab.models import PathFixture
from shapql.modules.kb.models import ABox
from tests.factories import edge, make_role_query, random_tree_fixture

R1 = edge("r1", "a0", "a1")
R2 = edge("r2", "a1", "a2")
R3 = edge("r3", "a2", "a3")


# ── fixtures ───────────────────────────────────────────────────────


class TestPathFixture:
    """Structural checks on A° and its designated path."""

    def test_path_is_found(self, path_fixture):
        assert path_fixture.path == (R1, R2, R3)
        assert path_fixture.k == 3
        assert path_fixture.count_paths() == 1

    def test_missing_link(self):
        with pytest.raises(FixtureError, match="Expected one role assertion"):
            PathFixture.from_individuals(ABox(frozenset({R1, R3})), ["a0", "a1", "a2"])

    def test_second_path(self, make_path_fixture):
        with pytest.raises(FixtureError, match="only one"):
            make_path_fixture(query_file="path3.q", extra=[edge("r4", "a0", "a3")])

    def test_repeated_individual(self):
        abox = ABox(frozenset({R1, edge("r1", "a1", "a0")}))
        with pytest.raises(FixtureError):
            PathFixture.from_individuals(abox, ["a0", "a1", "a0"])

    def test_query_constant_on_path(self):
        query = make_role_query(("r1", "a0", "?x"))
        with pytest.raises(FixtureError, match="Query constants"):
            PathFixture.from_individuals(
                ABox(frozenset({R1, R2})), ["a0", "a1", "a2"], query=query
            )


class TestMinimalSupport:
    def test_path_under_full_query(self, path_fixture, reasoner):
        assert is_minimal_support(path_fixture, reasoner=reasoner)

    def test_extra_assertion(self, make_path_fixture, reasoner):
        fixture = make_path_fixture(query_file="path3.q", extra=[edge("r9", "a3", "b")])
        assert not is_minimal_support(fixture, reasoner=reasoner)


# ── classification ─────────────────────────────────────────────────


class TestClassifyInterface:
    def test_first_interface(self, path_fixture):
        split = classify_interface(path_fixture, 1)
        assert split.below == frozenset()
        assert split.left == {R1}
        assert split.right == {R2, R3}
        assert split.detached == frozenset()

    def test_hanging_part_goes_below(self, make_path_fixture):
        hanging = edge("s", "a1", "b")
        fixture = make_path_fixture(query_file="path3.q", extra=[hanging])
        assert classify_interface(fixture, 1).below == {hanging}

    def test_detached_component(self, make_path_fixture):
        loose = edge("s", "c", "d")
        fixture = make_path_fixture(query_file="path3.q", extra=[loose])
        assert classify_interface(fixture, 1).detached == {loose}

    @pytest.mark.parametrize("chi", [0, 3])
    def test_end_vertices(self, path_fixture, chi):
        with pytest.raises(FixtureError, match="internal"):
            classify_interface(path_fixture, chi)

    def test_interface_touching_an_end(self, path_fixture):
        with pytest.raises(FixtureError, match="touches an end"):
            require_interface(path_fixture, 2)

    @pytest.mark.parametrize("seed", range(30))
    def test_partition_laws_on_random_trees(self, seed):
        fixture = random_tree_fixture(seed)
        splits = {chi: classify_interface(fixture, chi) for chi in range(1, fixture.k)}
        for split in splits.values():
            assert not split.below & split.left
            assert not split.below & split.right
            assert not split.left & split.right
            assert split.detached == frozenset()
            assert split.below | split.left | split.right == fixture.abox.assertions
        for chi, lam in combinations(sorted(splits), 2):
            assert splits[chi].right >= splits[lam].below | splits[lam].right
            assert splits[lam].left >= splits[chi].below | splits[chi].left


# ── splittability ──────────────────────────────────────────────────


class TestSplittability:
    """Whether the query can be answered by a left and a right support."""

    def test_full_path_is_unsplittable(self, path_fixture, reasoner):
        assert not is_splittable(path_fixture, 1, reasoner=reasoner)
        assert find_unsplittable_interface(path_fixture, reasoner=reasoner) == 1

    def test_detached_atom_makes_it_splittable(self, split_fixture, reasoner):
        assert is_splittable(split_fixture, 1, reasoner=reasoner)
        assert find_unsplittable_interface(split_fixture, reasoner=reasoner) is None

    def test_all_interfaces(self, path_fixture, split_fixture, reasoner):
        assert splittable_interfaces(path_fixture, reasoner=reasoner) == {1: False}
        assert count_splittable_interfaces(split_fixture, reasoner=reasoner) == 1
