"""
Interfaces along the designated path of a fixture.

Dropping the two path edges at a_χ cuts A° into the part hanging below a_χ,
the part on the a_0 side and the part on the a_k side. The interface
(a_χ, a_{χ+1}) is splittable when the query can be answered by two minimal
supports, one holding everything left of a_χ and nothing right of a_{χ+1}
and a connected one doing the converse.
"""

import logging
from functools import lru_cache
from itertools import combinations

import networkx as nx

from shapql.core.exceptions import FixtureError
from shapql.modules.hardness_lab.models import InterfaceSplit, PathFixture
from shapql.modules.kb.models import ABox, CQ, PartitionedKB, RoleAssertion, Ucq
from shapql.modules.kb.service import is_connected
from shapql.modules.reasoner.service import Reasoner, default_reasoner
from shapql.modules.supports.schemas import SupportSet
from shapql.modules.supports.service import minimal_supports, require_complete

logger = logging.getLogger(__name__)


def _require_internal(f: PathFixture, chi: int) -> None:
    if not 0 < chi < f.k:
        raise FixtureError(
            f"a_{chi} is not an internal vertex of a path with {f.k} assertions",
            details={"chi": chi, "k": f.k},
        )


def require_interface(f: PathFixture, chi: int) -> None:
    if not 1 <= chi <= f.k - 2:
        raise FixtureError(
            f"Interface (a_{chi}, a_{chi + 1}) touches an end of the path",
            details={"chi": chi, "k": f.k},
        )


def classify_interface(f: PathFixture, chi: int) -> InterfaceSplit:
    _require_internal(f, chi)
    incoming, outgoing = f.path[chi - 1], f.path[chi]

    graph = nx.Graph()
    graph.add_nodes_from(f.abox.individuals())
    for assertion in f.abox.sorted():
        if isinstance(assertion, RoleAssertion) and assertion not in (incoming, outgoing):
            graph.add_edge(assertion.subject, assertion.object)

    def component(individual: str) -> set[str]:
        return nx.node_connected_component(graph, individual)

    below_nodes = component(f.individuals[chi])
    left_nodes = component(f.individuals[chi - 1])
    right_nodes = component(f.individuals[chi + 1])
    if below_nodes & left_nodes or below_nodes & right_nodes or left_nodes & right_nodes:
        raise FixtureError(f"Removing the path edges at a_{chi} does not split A°")

    def within(nodes: set[str]) -> frozenset:
        return frozenset(
            a
            for a in f.abox.assertions
            if all(ind in nodes for ind in a.individuals())
            and a not in (incoming, outgoing)
        )

    below = within(below_nodes)
    left = within(left_nodes) | {incoming}
    right = within(right_nodes) | {outgoing}
    detached = f.abox.assertions - below - left - right
    return InterfaceSplit(below=below, left=left, right=right, detached=frozenset(detached))


# ── splittability ────────────────────────────────────────────────


def _covering_pairs(size: int):
    """(J_left, J_right) with both non-empty and J_left ∪ J_right = all."""
    universe = frozenset(range(size))
    subsets = [
        frozenset(combo)
        for k in range(1, size + 1)
        for combo in combinations(range(size), k)
    ]
    for left in subsets:
        for right in subsets:
            if left | right == universe:
                yield left, right


class _SupportCache:
    def __init__(self, f: PathFixture, reasoner: Reasoner, depth_limit, cap, threads):
        self._pk = PartitionedKB(abox_endo=f.abox, tbox_exo=f.tbox, dialect=f.dialect)
        self._options = {
            "reasoner": reasoner,
            "depth_limit": depth_limit,
            "threads": threads,
        }
        self._cap = cap
        self.get = lru_cache(maxsize=None)(self._compute)

    def _compute(self, components: tuple[CQ, ...]) -> SupportSet:
        atoms = frozenset(atom for cq in components for atom in cq.atoms)
        query = Ucq((CQ(atoms),))
        return require_complete(minimal_supports(self._pk, query, self._cap, **self._options))


def _splits_at(
    f: PathFixture, chi: int, cache: _SupportCache
) -> bool:
    left = classify_interface(f, chi).left
    right = classify_interface(f, chi + 1).right

    for cq in f.query.disjuncts:
        parts = cq.components()
        for j_left, j_right in _covering_pairs(len(parts)):
            left_supports = cache.get(tuple(parts[j] for j in sorted(j_left))).supports
            if not any(left <= s and not s & right for s in left_supports):
                continue
            right_supports = cache.get(tuple(parts[j] for j in sorted(j_right))).supports
            if any(
                right <= s and not s & left and is_connected(ABox(s))
                for s in right_supports
            ):
                return True
    return False


def is_splittable(
    f: PathFixture,
    chi: int,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    cap: int | None = None,
    threads: int | None = None,
) -> bool:
    require_interface(f, chi)
    cache = _SupportCache(f, reasoner or default_reasoner, depth_limit, cap, threads)
    return _splits_at(f, chi, cache)


def splittable_interfaces(
    f: PathFixture,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    cap: int | None = None,
    threads: int | None = None,
) -> dict[int, bool]:
    cache = _SupportCache(f, reasoner or default_reasoner, depth_limit, cap, threads)
    verdicts = {chi: _splits_at(f, chi, cache) for chi in range(1, f.k - 1)}
    logger.info(
        f"{sum(verdicts.values())} of {len(verdicts)} interfaces are splittable"
    )
    return verdicts


def count_splittable_interfaces(f: PathFixture, **options) -> int:
    return sum(splittable_interfaces(f, **options).values())


def find_unsplittable_interface(f: PathFixture, **options) -> int | None:
    """Smallest χ whose interface (a_χ, a_{χ+1}) is not splittable."""
    for chi, splittable in splittable_interfaces(f, **options).items():
        if not splittable:
            return chi
    return None


def is_minimal_support(
    f: PathFixture,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
) -> bool:
    """A° entails the query and no single assertion can be dropped."""
    oracle = reasoner or default_reasoner
    tbox = frozenset(f.tbox)
    if not oracle.entails_strict(f.abox, tbox, f.query, depth_limit):
        return False
    return not any(
        oracle.entails_strict(f.abox.difference({a}), tbox, f.query, depth_limit)
        for a in f.abox.sorted()
    )
