"""
Shared fixtures for the whole test suite.

The recipe knowledge base is the main fixture: a land-sea dish whose four
ingredient links are the only endogenous elements. Its game has the minimal
supports {e1, e2} and {e1, e3, e4}.
"""

import pytest

from shapql.modules.games.service import game_from_kb
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.text_io.service import parse_kb, parse_query
from tests.factories import DATA_DIR, E1, E2, E3, E4, fact, make_kb


@pytest.fixture()
def reasoner():
    """A fresh reasoner so memo statistics never leak between tests."""
    return Reasoner()


# ── Recipe knowledge base ──────────────────────────────────────────


@pytest.fixture()
def recipe_document():
    return parse_kb((DATA_DIR / "recipe.kbq").read_text(encoding="utf-8"))


@pytest.fixture()
def recipe_kb(recipe_document):
    return recipe_document.to_partitioned_kb()


@pytest.fixture()
def landsea_query():
    return parse_query((DATA_DIR / "landsea.q").read_text(encoding="utf-8"))


@pytest.fixture()
def recipe_game(recipe_kb, landsea_query, reasoner):
    return game_from_kb(recipe_kb, landsea_query, reasoner=reasoner, name="recipe")


@pytest.fixture()
def noisy_recipe_kb(recipe_kb):
    """The recipe with an unused endogenous fact D(z)."""
    return make_kb(
        endo=(E1, E2, E3, E4, fact("D", "z")),
        exo=tuple(recipe_kb.abox_exo),
        tbox_exo=tuple(recipe_kb.tbox_exo),
    )
