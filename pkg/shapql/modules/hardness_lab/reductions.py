"""
Graph games and the s-t connectedness counting pipeline.

Five encodings of the same directed graph give isomorphic games: edges as
role assertions under a reachability query, as concept inclusions under an
axiom goal, as inclusions reaching a query atom, and twice as role
assertions propagating a concept back to the source. Counting the edge
subsets that connect s to t reduces to one Shapley value per graph G_i.
"""

import logging
from collections.abc import Callable
from fractions import Fraction
from math import factorial

from shapql.core.concurrency import parallel_map
from shapql.core.config import settings
from shapql.core.exceptions import ReductionError, SizeLimitError, ValidationError
from shapql.modules.games.service import game_from_kb
from shapql.modules.hardness_lab.linear import solve_linear_exact
from shapql.modules.hardness_lab.models import DiGraph, Edge, GraphEncoding, LinearSystem
from shapql.modules.kb.models import (
    ABox,
    And,
    Atom,
    AxiomGoal,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    CQ,
    Exists,
    PartitionedKB,
    Reach,
    Role,
    RoleAssertion,
    Ucq,
)
from shapql.modules.reasoner.chase import reachable
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.shapley.service import shapley_all, shapley_exact_subset

logger = logging.getLogger(__name__)

EDGE_ROLE = "edge"


def _check_edges(g: DiGraph, limit: int, what: str) -> None:
    if g.m > limit:
        raise SizeLimitError(
            f"{g.m} edges exceed the {what} limit of {limit}", limit=limit, actual=g.m
        )


def _atomic_query(concept: str, individual: str) -> Ucq:
    return Ucq((CQ(frozenset({Atom(concept, (individual,))})),))


# ── graph encodings ──────────────────────────────────────────────


def reachability_game(g: DiGraph) -> GraphEncoding:
    players = tuple(RoleAssertion(Role(EDGE_ROLE), v, w) for v, w in g.edges)
    pk = PartitionedKB(abox_endo=ABox(frozenset(players)))
    return GraphEncoding(pk, Reach(EDGE_ROLE, g.source, g.target), players)


def _inclusions(g: DiGraph, name: Callable[[str], str]) -> tuple[ConceptInclusion, ...]:
    return tuple(
        ConceptInclusion(ConceptName(name(v)), ConceptName(name(w))) for v, w in g.edges
    )


def tbox_game_from_graph(g: DiGraph) -> GraphEncoding:
    def name(v: str) -> str:
        return f"A_{v}"

    players = _inclusions(g, name)
    goal = AxiomGoal(ConceptInclusion(ConceptName(name(g.source)), ConceptName(name(g.target))))
    return GraphEncoding(PartitionedKB(tbox_endo=frozenset(players)), goal, players)


def kb1_game_from_graph(g: DiGraph) -> GraphEncoding:
    def name(v: str) -> str:
        return "A" if v == g.target else f"A_{v}"

    players = _inclusions(g, name)
    pk = PartitionedKB(
        abox_exo=ABox(frozenset({ConceptAssertion(name(g.source), "c")})),
        tbox_endo=frozenset(players),
    )
    return GraphEncoding(pk, _atomic_query("A", "c"), players)


def kb2_game_from_graph(g: DiGraph) -> GraphEncoding:
    def ind(v: str) -> str:
        return f"c_{v}"

    r = Role("r")
    players = tuple(RoleAssertion(r, ind(v), ind(w)) for v, w in g.edges)
    pk = PartitionedKB(
        abox_endo=ABox(frozenset(players)),
        abox_exo=ABox(
            frozenset(
                {ConceptAssertion("B", ind(g.source)), ConceptAssertion("D", ind(g.target))}
            )
        ),
        tbox_exo=frozenset(
            {
                ConceptInclusion(And(ConceptName("B"), ConceptName("D")), ConceptName("A")),
                ConceptInclusion(Exists(r, ConceptName("D")), ConceptName("D")),
            }
        ),
    )
    return GraphEncoding(pk, _atomic_query("A", ind(g.source)), players)


def el_game_from_graph(g: DiGraph) -> GraphEncoding:
    def ind(v: str) -> str:
        return f"a_{v}"

    r = Role("r")
    players = tuple(RoleAssertion(r, ind(v), ind(w)) for v, w in g.edges)
    pk = PartitionedKB(
        abox_endo=ABox(frozenset(players)),
        abox_exo=ABox(
            frozenset(
                {ConceptAssertion("A", ind(g.source)), ConceptAssertion("B", ind(g.target))}
            )
        ),
        tbox_exo=frozenset(
            {
                ConceptInclusion(Exists(r, ConceptName("B")), ConceptName("B")),
                ConceptInclusion(And(ConceptName("A"), ConceptName("B")), ConceptName("C")),
            }
        ),
    )
    return GraphEncoding(pk, _atomic_query("C", ind(g.source)), players)


GRAPH_ENCODINGS: dict[str, Callable[[DiGraph], GraphEncoding]] = {
    "reachability": reachability_game,
    "tbox": tbox_game_from_graph,
    "kb1": kb1_game_from_graph,
    "kb2": kb2_game_from_graph,
    "el": el_game_from_graph,
}


def edge_value_vector(
    encoding: GraphEncoding,
    *,
    reasoner: Reasoner | None = None,
    threads: int | None = None,
) -> tuple[Fraction, ...]:
    """Shapley value of each edge's player, in edge order."""
    game = game_from_kb(encoding.pk, encoding.query, reasoner=reasoner)
    result = shapley_all(game, threads=threads)
    return tuple(result.value_of(player) for player in encoding.edge_players)


def encoding_vectors(
    g: DiGraph, *, reasoner: Reasoner | None = None, threads: int | None = None
) -> dict[str, tuple[Fraction, ...]]:
    return {
        name: edge_value_vector(build(g), reasoner=reasoner, threads=threads)
        for name, build in GRAPH_ENCODINGS.items()
    }


# ── s-t connectedness ────────────────────────────────────────────


def _fresh_prefix(g: DiGraph, count: int, prefix: str = "s_") -> str:
    taken = set(g.vertices)
    while any(f"{prefix}{k}" in taken for k in range(1, count + 1)):
        prefix = "_" + prefix
    return prefix


def build_Gi(g: DiGraph, i: int) -> tuple[DiGraph, Edge]:
    """G plus a chain s_1 → … → s_i → s and the edge μ = (s_1, t)."""
    if i < 1:
        raise ValidationError("i must be at least 1", field="i")
    prefix = _fresh_prefix(g, i)
    chain = [f"{prefix}{k}" for k in range(1, i + 1)]
    mu = (chain[0], g.target)
    edges = (
        g.edges
        + tuple(zip(chain, chain[1:]))
        + ((chain[-1], g.source), mu)
    )
    return DiGraph(g.vertices + tuple(chain), edges, chain[0], g.target), mu


def count_st_subgraphs_brute(g: DiGraph, *, limit: int | None = None) -> int:
    bound = settings.ST_BRUTE_EDGE_LIMIT if limit is None else limit
    _check_edges(g, bound, "brute-force s-t")
    return sum(
        reachable(
            {edge for bit, edge in enumerate(g.edges) if mask >> bit & 1},
            g.source,
            g.target,
        )
        for mask in range(1 << g.m)
    )


def _as_count(value: Fraction, label: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ReductionError(
            f"{label} is not a nonnegative integer",
            details={label: f"{value.numerator}/{value.denominator}"},
        )
    return int(value)


def count_st_subgraphs_via_shapley(
    g: DiGraph,
    *,
    reasoner: Reasoner | None = None,
    threads: int | None = None,
    limit: int | None = None,
) -> int:
    m = g.m
    bound = settings.ST_COUNT_EDGE_LIMIT if limit is None else limit
    _check_edges(g, bound, "s-t pipeline")
    if g.source == g.target:
        # every edge subset connects a vertex to itself
        return 1 << m
    if m == 0:
        return 0

    def variant_value(i: int) -> Fraction:
        gi, _ = build_Gi(g, i)
        encoding = reachability_game(gi)
        game = game_from_kb(encoding.pk, encoding.query, reasoner=reasoner, name=f"G_{i}")
        value = shapley_exact_subset(game, encoding.edge_players[-1], threads=1, limit=gi.m)
        logger.info(f"Variant G_{i} of {m}: Sh(mu) = {value}")
        return value

    values = parallel_map(variant_value, list(range(1, m + 1)), threads)

    matrix = []
    rhs = []
    for i, value in zip(range(1, m + 1), values):
        scale = factorial(m + i + 1)
        matrix.append(
            [Fraction(factorial(i + j) * factorial(m - j), scale) for j in range(1, m + 1)]
        )
        rhs.append(1 - value)

    solution = solve_linear_exact(LinearSystem.of(matrix, rhs))
    counts = [0] + [_as_count(v, f"cs_{j}") for j, v in enumerate(solution, start=1)]
    logger.info(f"Connecting subgraphs by size: {counts}")
    return sum(counts)
