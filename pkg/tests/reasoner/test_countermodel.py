"""
Tests for bounded countermodel search.
"""

import pytest

from shapql.core.exceptions import ValidationError
from shapql.modules.kb.models import ABox, ConceptInclusion, ConceptName
from shapql.modules.reasoner.countermodel import find_countermodel
from tests.factories import E1, fact, make_atomic_query


class TestFindCountermodel:
    """Models of the KB that violate the query, up to a domain bound."""

    def test_trivial_countermodel(self):
        model = find_countermodel(
            ABox(frozenset({fact("A", "a")})), set(), make_atomic_query("B", "a"), 1
        )
        assert model is not None
        assert "a" not in model.concepts.get("B", frozenset())

    def test_entailed_query_has_none(self):
        tbox = {ConceptInclusion(ConceptName("A"), ConceptName("B"))}
        model = find_countermodel(
            ABox(frozenset({fact("A", "a")})), tbox, make_atomic_query("B", "a"), 2
        )
        assert model is None

    def test_recipe_without_meat_link(self, recipe_document, landsea_query):
        abox = recipe_document.full_abox().difference({E1})
        tbox = recipe_document.full_tbox()
        model = find_countermodel(abox, tbox, landsea_query, 7)
        assert model is not None
        assert model.is_model_of(abox, tbox)
        assert not model.satisfies_query(landsea_query)

    def test_domain_bound_below_individuals(self, recipe_document, landsea_query):
        with pytest.raises(ValidationError, match="Domain bound"):
            find_countermodel(recipe_document.full_abox(), set(), landsea_query, 1)
