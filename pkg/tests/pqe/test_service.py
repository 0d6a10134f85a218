"""
Tests for probabilistic query evaluation, probability regimes and the
bottom-to-concept rewriting.
"""

from fractions import Fraction

import pytest

from shapql.core.enums import Regime
from shapql.core.exceptions import (
    NameClashError,
    RegimeViolationError,
    SizeLimitError,
    ValidationError,
)
from shapql.modules.kb.models import ABox, Bot, ConceptInclusion, ConceptName
from shapql.modules.pqe.models import ProbabilisticABox
from shapql.modules.pqe.service import (
    bottom_closed_form,
    pqe_exact,
    qstar_probability_identity,
    qstar_transform,
    regime_flags,
    require_regime,
    validate_regime,
    verify_qstar_equivalence,
)
from shapql.modules.supports.service import count_satisfying_coalitions, minimal_supports
from tests.factories import (
    edge,
    fact,
    make_atomic_query,
    make_role_query,
    random_horn_instance,
)

HALF = Fraction(1, 2)
R_QUERY = make_role_query(("r", "?x", "?y"))
A_IS_EMPTY = ConceptInclusion(ConceptName("A"), Bot())


def _make_pabox(**probabilities) -> ProbabilisticABox:
    """Keyword names are individuals of A-facts: ``_make_pabox(a="1/2")``."""
    return ProbabilisticABox({fact("A", c): Fraction(p) for c, p in probabilities.items()})


# ── probabilistic ABoxes ───────────────────────────────────────────


class TestProbabilisticABox:
    @pytest.mark.parametrize("p", [0, Fraction(3, 2), -1])
    def test_probability_outside_range(self, p):
        with pytest.raises(ValidationError, match="outside"):
            ProbabilisticABox({fact("A", "a"): p})

    def test_certain_and_uncertain(self):
        d = _make_pabox(a=1, b="1/3")
        assert d.certain() == [fact("A", "a")]
        assert d.uncertain() == [fact("A", "b")]
        assert d.image() == {Fraction(1), Fraction(1, 3)}

    def test_uniform(self):
        abox = ABox(frozenset({fact("A", "a"), fact("A", "b")}))
        assert ProbabilisticABox.uniform(abox, HALF).image() == {HALF}


# ── evaluation ─────────────────────────────────────────────────────


class TestPqeExact:
    """Weighted sum over possible worlds."""

    def test_recipe_at_one_half(self, half_abox, half_document, landsea_query, reasoner):
        probability = pqe_exact(
            half_abox, half_document.full_tbox(), landsea_query, reasoner=reasoner
        )
        assert probability == Fraction(5, 16)

    def test_threads_do_not_change_the_sum(self, half_abox, half_document, landsea_query):
        tbox = half_document.full_tbox()
        assert pqe_exact(half_abox, tbox, landsea_query, threads=3) == Fraction(5, 16)

    def test_independent_facts(self, reasoner):
        d = _make_pabox(a="1/3", b="1/4")
        query = make_atomic_query("A", "a")
        assert pqe_exact(d, (), query, reasoner=reasoner) == Fraction(1, 3)

    def test_certain_only(self, reasoner):
        d = _make_pabox(a=1)
        assert pqe_exact(d, (), make_atomic_query("A", "a"), reasoner=reasoner) == 1

    def test_inconsistent_worlds_entail_everything(self, reasoner):
        d = _make_pabox(a=HALF)
        assert pqe_exact(d, (A_IS_EMPTY,), R_QUERY, reasoner=reasoner) == HALF

    def test_limit(self, half_abox, half_document, landsea_query):
        with pytest.raises(SizeLimitError) as info:
            pqe_exact(half_abox, half_document.full_tbox(), landsea_query, limit=3)
        assert info.value.exit_code == 4


class TestCoalitionCount:
    """With every fact at 1/2, 2^n · Pr counts the satisfying coalitions."""

    @pytest.mark.parametrize("seed", range(50))
    def test_random_instances(self, reasoner, seed):
        pk, query = random_horn_instance(seed, max_facts=12)
        d = ProbabilisticABox.uniform(pk.abox_endo, HALF)
        probability = pqe_exact(d, pk.full_tbox(), query, reasoner=reasoner)
        ss = minimal_supports(pk, query, reasoner=reasoner)
        assert probability * 2 ** len(pk.abox_endo) == count_satisfying_coalitions(ss)


# ── regimes ────────────────────────────────────────────────────────


class TestRegimes:
    def test_all_half(self):
        assert regime_flags(_make_pabox(a=HALF, b=HALF)) == {
            "half": True,
            "half-one": True,
            "single-proper": True,
            "any": True,
        }

    def test_half_and_one(self, half_abox):
        flags = regime_flags(half_abox)
        assert not flags["half"]
        assert flags["half-one"] and flags["single-proper"]

    def test_single_proper(self):
        d = _make_pabox(a="1/3", b=1)
        assert validate_regime(d, Regime.SINGLE_PROPER)
        assert not validate_regime(d, Regime.HALF_ONE)

    def test_two_proper_values(self):
        d = _make_pabox(a="1/3", b=HALF)
        assert not validate_regime(d, Regime.SINGLE_PROPER)
        assert validate_regime(d, Regime.ANY)

    def test_violation(self, half_abox):
        with pytest.raises(RegimeViolationError) as info:
            require_regime(half_abox, Regime.HALF)
        assert info.value.exit_code == 2
        assert info.value.details["regime"] == "half"


# ── bottom rewriting ───────────────────────────────────────────────


class TestQStar:
    """⊥ becomes a fresh concept and the query gains a disjunct for it."""

    def test_transform(self):
        tbox, query = qstar_transform((A_IS_EMPTY,), R_QUERY)
        assert tbox == {ConceptInclusion(ConceptName("A"), ConceptName("ABot"))}
        assert len(query.disjuncts) == 2
        assert "ABot" in query.concept_names()

    def test_name_clash(self):
        query = make_atomic_query("ABot", "a")
        with pytest.raises(NameClashError):
            qstar_transform((A_IS_EMPTY,), query)

    def test_custom_bottom_name(self):
        _, query = qstar_transform((A_IS_EMPTY,), R_QUERY, bottom_name="Empty")
        assert "Empty" in query.concept_names()

    @pytest.mark.parametrize(
        "facts",
        [
            (fact("A", "a"),),
            (edge("r", "a", "b"),),
            (fact("B", "a"),),
        ],
    )
    def test_equivalence(self, facts, reasoner):
        abox = ABox(frozenset(facts))
        assert verify_qstar_equivalence(abox, (A_IS_EMPTY,), R_QUERY, reasoner=reasoner)

    def test_abox_may_not_mention_bottom_name(self, reasoner):
        abox = ABox(frozenset({fact("ABot", "a")}))
        with pytest.raises(ValidationError, match="ABot"):
            verify_qstar_equivalence(abox, (), R_QUERY, reasoner=reasoner)


class TestQStarIdentity:
    """Pr(Q*) = Pr(∃A_⊥) + (1 - Pr(∃A_⊥))·Pr(Q); the minus form fails."""

    def test_plus_form(self, reasoner):
        d = ProbabilisticABox({fact("ABot", "c"): HALF, edge("r", "a", "b"): HALF})
        identity = qstar_probability_identity(d, (), R_QUERY, reasoner=reasoner)
        assert identity.pr_bottom == HALF
        assert identity.pr_query == HALF
        assert identity.pr_qstar == Fraction(3, 4)
        assert identity.plus_holds
        assert not identity.minus_holds
        assert identity.minus_form == Fraction(1, 4)

    def test_closed_form_bottom(self):
        d = ProbabilisticABox({fact("ABot", "c"): HALF, fact("ABot", "e"): Fraction(1, 3)})
        assert bottom_closed_form(d) == Fraction(2, 3)

    def test_closed_form_matches_brute_force(self, reasoner):
        d = ProbabilisticABox(
            {
                fact("ABot", "c"): HALF,
                fact("ABot", "e"): Fraction(1, 3),
                edge("r", "a", "b"): HALF,
            }
        )
        identity = qstar_probability_identity(d, (), R_QUERY, reasoner=reasoner)
        assert identity.pr_bottom == bottom_closed_form(d)
