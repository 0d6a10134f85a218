"""
Tests for the depth-bounded restricted chase.
"""

from shapql.modules.kb.models import (
    ABox,
    And,
    Bot,
    ConceptInclusion,
    ConceptName,
    Exists,
    Role,
)
from shapql.modules.reasoner.chase import chase, reachable
from shapql.modules.reasoner.normalize import normalize_tbox
from tests.factories import edge, fact


def _run(assertions, axioms, depth):
    return chase(ABox(frozenset(assertions)), normalize_tbox(axioms), depth)


def _sub(lhs, rhs) -> ConceptInclusion:
    return ConceptInclusion(lhs, rhs)


A, B, C = ConceptName("A"), ConceptName("B"), ConceptName("C")
R = Role("r")


class TestChase:
    """Labels, nulls and saturation."""

    def test_propagation_only(self):
        structure = _run([fact("A", "a")], [_sub(A, B)], depth=0)
        assert structure.labels["a"] == {"A", "B"}
        assert structure.saturated
        assert not structure.nulls()

    def test_backward_propagation_along_edges(self):
        structure = _run(
            [fact("A", "s"), fact("B", "t"), edge("r", "s", "t")],
            [_sub(Exists(R, B), B), _sub(And(A, B), C)],
            depth=3,
        )
        assert {"A", "B", "C"} <= structure.labels["s"]
        assert structure.saturated

    def test_cutoff_leaves_structure_unsaturated(self):
        structure = _run([fact("A", "a")], [_sub(A, Exists(R, A))], depth=2)
        assert len(structure.nulls()) == 2
        assert not structure.saturated

    def test_restricted_chase_reuses_existing_witness(self):
        structure = _run(
            [fact("A", "a"), fact("B", "b"), edge("r", "a", "b")],
            [_sub(A, Exists(R, B))],
            depth=4,
        )
        assert not structure.nulls()
        assert structure.saturated

    def test_bottom_marks_inconsistency(self):
        structure = _run([fact("A", "a")], [_sub(A, Bot())], depth=1)
        assert structure.inconsistent

    def test_fresh_names_hidden_from_abox_view(self):
        structure = _run(
            [fact("A", "a")], [_sub(A, Exists(R, And(B, C)))], depth=1
        )
        names = structure.as_abox().concept_names()
        assert names == {"A", "B", "C"}


class TestReachable:
    """Directed reachability over edge pairs."""

    def test_path(self):
        assert reachable({("s", "a"), ("a", "t")}, "s", "t")

    def test_direction_matters(self):
        assert not reachable({("t", "s")}, "s", "t")

    def test_same_vertex(self):
        assert reachable(set(), "s", "s")
