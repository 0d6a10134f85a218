"""
Fixtures for the supports suite.
"""

import pytest

from shapql.modules.hardness_lab.reductions import reachability_game
from tests.factories import make_digraph


@pytest.fixture()
def two_edge_path():
    return reachability_game(make_digraph(edges=[("s", "a"), ("a", "t")]))
