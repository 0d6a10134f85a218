import pytest

from shapql.modules.pqe.models import ProbabilisticABox
from shapql.modules.text_io.service import parse_kb
from tests.factories import DATA_DIR


@pytest.fixture()
def half_document():
    return parse_kb((DATA_DIR / "recipe_half.kbq").read_text(encoding="utf-8"))


@pytest.fixture()
def half_abox(half_document):
    """Ingredient links at 1/2, the two exogenous facts certain."""
    return ProbabilisticABox(
        {a: half_document.probability_of(a) for a in half_document.full_abox().sorted()}
    )
