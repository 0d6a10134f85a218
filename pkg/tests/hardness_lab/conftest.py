"""
Path fixtures for the interface and encoding suites.

A° is the three-assertion path a0 -r1-> a1 -r2-> a2 -r3-> a3. Under the
full path query its only interface (a1, a2) is unsplittable; under the
query that detaches the r3 atom it is splittable.
"""

import pytest

from shapql.modules.hardness_lab.models import PathFixture
from shapql.modules.text_io.service import parse_kb, parse_query
from tests.factories import DATA_DIR

PATH = ("a0", "a1", "a2", "a3")


def _make_fixture(*, query_file: str, extra=()) -> PathFixture:
    document = parse_kb((DATA_DIR / "path3.kbq").read_text(encoding="utf-8"))
    query = parse_query((DATA_DIR / query_file).read_text(encoding="utf-8"))
    return PathFixture.from_individuals(
        document.full_abox().union(frozenset(extra)),
        PATH,
        tbox=document.full_tbox(),
        query=query,
    )


@pytest.fixture()
def path_fixture():
    return _make_fixture(query_file="path3.q")


@pytest.fixture()
def split_fixture():
    return _make_fixture(query_file="path3_split.q")


@pytest.fixture()
def make_path_fixture():
    return _make_fixture
