"""
Tests for the immutable knowledge-base value types.
"""

import pytest

from shapql.core.exceptions import ValidationError
from shapql.modules.kb.models import (
    ABox,
    And,
    Atom,
    ConceptInclusion,
    ConceptName,
    CQ,
    Exists,
    Not,
    Role,
    RoleAssertion,
    Variable,
    element_key,
)
from tests.factories import E1, E2, E3, E4, edge, fact, make_kb


class TestRoleAssertions:
    """Inverse roles are stored in forward form."""

    def test_inverse_normalizes(self):
        inverse = RoleAssertion(Role("r").inverse(), "b", "a")
        assert inverse.normalized() == edge("r", "a", "b")

    def test_abox_membership_ignores_direction(self):
        abox = ABox(frozenset({RoleAssertion(Role("r", inverted=True), "b", "a")}))
        assert edge("r", "a", "b") in abox
        assert RoleAssertion(Role("r", inverted=True), "b", "a") in abox

    def test_rendering(self):
        assert str(RoleAssertion(Role("r", inverted=True), "a", "b")) == "inv(r)(a,b)"
        assert str(fact("Meat", "poularde")) == "Meat(poularde)"


class TestConcepts:
    """Concept syntax trees render in the text syntax."""

    def test_nested_rendering(self):
        concept = And(ConceptName("A"), Exists(Role("r"), And(ConceptName("B"), ConceptName("C"))))
        assert str(concept) == "A and exists r.(B and C)"

    def test_mentions_finds_nested_negation(self):
        concept = Exists(Role("r"), Not(ConceptName("B")))
        assert concept.mentions(Not)
        assert not ConceptName("B").mentions(Not)

    def test_inclusion_signature(self):
        axiom = ConceptInclusion(Exists(Role("hasIngr"), ConceptName("Fish")), ConceptName("FishBased"))
        assert axiom.concept_names() == {"Fish", "FishBased"}
        assert axiom.role_names() == {"hasIngr"}


class TestQueries:
    """Atoms, conjunctive queries and their components."""

    def test_atom_arity_checked(self):
        with pytest.raises(ValidationError, match="unary or binary"):
            Atom("r", ("a", "b", "c"))

    def test_components_split_on_shared_terms(self):
        x, y, z, w = (Variable(n) for n in "xyzw")
        cq = CQ(frozenset({Atom("r", (x, y)), Atom("s", (y, z)), Atom("A", (w,))}))
        components = cq.components()
        assert sorted(len(c) for c in components) == [1, 2]

    def test_constants_and_variables(self):
        cq = CQ(frozenset({Atom("r", (Variable("x"), "c"))}))
        assert cq.constants() == {"c"}
        assert cq.variables() == {Variable("x")}


class TestPartitionedKB:
    """Players are endogenous assertions then endogenous axioms."""

    def test_players_order(self):
        axiom = ConceptInclusion(ConceptName("A"), ConceptName("B"))
        pk = make_kb(endo=(E1, E2, E3, E4), tbox_endo=(axiom,))
        players = pk.players()
        assert players[-1] == axiom
        assert list(players[:-1]) == sorted([E1, E2, E3, E4], key=str)
        assert sorted(players, key=element_key) == list(players)

    def test_overlap_rejected(self):
        with pytest.raises(ValidationError, match="both endogenous and exogenous"):
            make_kb(endo=(E1,), exo=(E1,))

    def test_full_abox(self):
        pk = make_kb(endo=(E1,), exo=(fact("Meat", "poularde"),))
        assert len(pk.full_abox()) == 2
