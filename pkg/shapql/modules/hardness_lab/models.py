"""
Graphs, path fixtures and linear systems used by the counting reductions.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from shapql.core.enums import Dialect
from shapql.core.exceptions import FixtureError, ValidationError
from shapql.modules.kb.models import (
    ABox,
    BooleanQuery,
    PartitionedKB,
    RoleAssertion,
    Ucq,
)

Edge = tuple[str, str]


# ── graphs ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class DiGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    target: str

    def __post_init__(self):
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValidationError("Duplicate vertex", field="vertices")
        missing = {self.source, self.target} - known
        if missing:
            raise ValidationError(
                "Source and target must be vertices",
                field="vertices",
                errors=sorted(missing),
            )
        if len(set(self.edges)) != len(self.edges):
            raise ValidationError("Duplicate edge", field="edges")
        stray = sorted({v for edge in self.edges for v in edge} - known)
        if stray:
            raise ValidationError("Edge endpoint is not a vertex", field="edges", errors=stray)

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], source: str, target: str) -> DiGraph:
        edge_list = tuple((str(v), str(w)) for v, w in edges)
        vertices: dict[str, None] = {source: None, target: None}
        for v, w in edge_list:
            vertices.setdefault(v)
            vertices.setdefault(w)
        return cls(tuple(vertices), edge_list, source, target)

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class BipartiteGraph:
    x: tuple[str, ...]
    y: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if len(set(self.x)) != len(self.x) or len(set(self.y)) != len(self.y):
            raise ValidationError("Duplicate vertex", field="vertices")
        shared = set(self.x) & set(self.y)
        if shared:
            raise ValidationError(
                "Parts must be disjoint", field="vertices", errors=sorted(shared)
            )
        bad = [f"{a}-{b}" for a, b in self.edges if a not in self.x or b not in self.y]
        if bad:
            raise ValidationError("Edges must go from X to Y", field="edges", errors=bad)
        if len(set(self.edges)) != len(self.edges):
            raise ValidationError("Duplicate edge", field="edges")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.x + self.y

    def neighbours(self, vertex: str) -> list[str]:
        return [b if a == vertex else a for a, b in self.edges if vertex in (a, b)]

    def is_independent(self, chosen: Iterable[str]) -> bool:
        picked = set(chosen)
        return not any(a in picked and b in picked for a, b in self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.x, bipartite=0)
        graph.add_nodes_from(self.y, bipartite=1)
        graph.add_edges_from(self.edges)
        return graph


# ── path fixtures ────────────────────────────────────────────────


def _linking(abox: ABox, left: str, right: str) -> list[RoleAssertion]:
    return [
        a
        for a in abox.sorted()
        if isinstance(a, RoleAssertion) and {a.subject, a.object} == {left, right}
    ]


@dataclass(frozen=True)
class PathFixture:
    """A minimal support A° of ``query`` with a designated path a_0 … a_k.

    ``path[j]`` is the assertion between ``individuals[j]`` and
    ``individuals[j + 1]``; it must be the only path from a_0 to a_k in A°.
    """

    abox: ABox
    path: tuple[RoleAssertion, ...]
    individuals: tuple[str, ...]
    tbox: frozenset = frozenset()
    query: Ucq = field(default_factory=lambda: Ucq(()))
    dialect: Dialect = Dialect.ELHI_BOT

    def __post_init__(self):
        if len(self.individuals) != len(self.path) + 1:
            raise FixtureError("A path of k assertions needs k + 1 individuals")
        if len(set(self.individuals)) != len(self.individuals):
            raise FixtureError(
                "Path individuals must be pairwise distinct",
                details={"individuals": list(self.individuals)},
            )
        for j, assertion in enumerate(self.path):
            ends = {assertion.subject, assertion.object}
            if assertion not in self.abox or ends != set(self.individuals[j : j + 2]):
                raise FixtureError(
                    f"{assertion} does not link {self.individuals[j]} and "
                    f"{self.individuals[j + 1]} in the ABox"
                )
        shared = self.query.constants() & set(self.individuals)
        if shared:
            raise FixtureError(
                "Query constants must stay off the path",
                details={"constants": sorted(shared)},
            )
        paths = self.count_paths()
        if paths != 1:
            raise FixtureError(
                f"The designated path must be the only one between its ends, found {paths}",
                details={"paths": paths},
            )

    @classmethod
    def from_individuals(
        cls,
        abox: ABox,
        individuals: Sequence[str],
        tbox: Iterable = (),
        query: Ucq | None = None,
        dialect: Dialect = Dialect.ELHI_BOT,
    ) -> PathFixture:
        path = []
        for left, right in zip(individuals, individuals[1:]):
            candidates = _linking(abox, left, right)
            if len(candidates) != 1:
                raise FixtureError(
                    f"Expected one role assertion between {left} and {right}, "
                    f"found {len(candidates)}"
                )
            path.append(candidates[0])
        return cls(
            abox=abox,
            path=tuple(path),
            individuals=tuple(individuals),
            tbox=frozenset(tbox),
            query=query or Ucq(()),
            dialect=dialect,
        )

    @property
    def k(self) -> int:
        return len(self.path)

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.abox.individuals())
        for assertion in self.abox.sorted():
            if isinstance(assertion, RoleAssertion):
                graph.add_edge(assertion.subject, assertion.object, key=assertion)
        return graph

    def count_paths(self) -> int:
        if not self.path:
            return 1
        graph = self.multigraph()
        return sum(
            1
            for _ in nx.all_simple_edge_paths(
                graph, self.individuals[0], self.individuals[-1]
            )
        )


# ── exact linear systems ─────────────────────────────────────────


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        size = len(self.rhs)
        if len(self.matrix) != size or any(len(row) != size for row in self.matrix):
            raise ValidationError(
                "Linear system must be square with one right-hand side per row",
                field="matrix",
            )

    @classmethod
    def of(cls, matrix: Iterable[Iterable], rhs: Iterable) -> LinearSystem:
        return cls(
            tuple(tuple(Fraction(v) for v in row) for row in matrix),
            tuple(Fraction(v) for v in rhs),
        )

    @property
    def size(self) -> int:
        return len(self.rhs)


# ── reduction outputs ────────────────────────────────────────────


class GraphEncoding(NamedTuple):
    """A graph game as a partitioned KB; ``edge_players[i]`` plays ``edges[i]``."""

    pk: PartitionedKB
    query: BooleanQuery
    edge_players: tuple


@dataclass(frozen=True)
class InterfaceSplit:
    below: frozenset
    left: frozenset
    right: frozenset
    # components of A° that touch none of the three
    detached: frozenset = frozenset()


@dataclass(frozen=True)
class EncodedInstance:
    """A bipartite graph encoded at one interface of a path fixture.

    ``eta`` maps each endogenous assertion to its vertex, ``rho`` maps every
    individual back to the A° individual it copies.
    """

    pk: PartitionedKB
    query: Ucq
    eta: dict = field(default_factory=dict)
    rho: dict = field(default_factory=dict)

    def endogenous_for(self, vertex: str):
        return next(a for a, v in self.eta.items() if v == vertex)

    def __hash__(self) -> int:
        return hash((self.pk, self.query))
