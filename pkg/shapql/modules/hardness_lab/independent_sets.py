"""
Counting independent sets of a bipartite graph through Shapley values.

A new vertex μ joins X. Variant G_0 links μ to every y ∈ Y, variant G_i
links it to i fresh Y-vertices. Each variant is encoded at the same
interface of the fixture, and the value of μ's player in each encoding
gives one row of an exact linear system in the counts IS(G, j).
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from pydantic import BaseModel, ConfigDict

from shapql.core.concurrency import parallel_map
from shapql.core.config import settings
from shapql.core.exceptions import ReductionError, SizeLimitError
from shapql.modules.games.service import game_from_kb
from shapql.modules.hardness_lab.encoding import bipartite_encoding
from shapql.modules.hardness_lab.linear import solve_linear_exact
from shapql.modules.hardness_lab.models import BipartiteGraph, LinearSystem, PathFixture
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.shapley.service import shapley_exact_subset

logger = logging.getLogger(__name__)


class IndependentSetCount(BaseModel):
    model_config = ConfigDict(frozen=True)

    total: int
    by_size: tuple[int, ...]
    non_independent_by_size: tuple[int, ...]


def _check_vertices(g: BipartiteGraph, limit: int, what: str) -> None:
    size = len(g.vertices)
    if size > limit:
        raise SizeLimitError(
            f"{size} vertices exceed the {what} limit of {limit}", limit=limit, actual=size
        )


def count_independent_sets_brute(
    g: BipartiteGraph, *, limit: int | None = None
) -> IndependentSetCount:
    bound = settings.IS_BRUTE_VERTEX_LIMIT if limit is None else limit
    _check_vertices(g, bound, "brute-force independent-set")
    vertices = g.vertices
    by_size = [
        sum(1 for chosen in combinations(vertices, j) if g.is_independent(chosen))
        for j in range(len(vertices) + 1)
    ]
    return IndependentSetCount(
        total=sum(by_size),
        by_size=tuple(by_size),
        non_independent_by_size=tuple(
            comb(len(vertices), j) - count for j, count in enumerate(by_size)
        ),
    )


def _fresh(taken: set[str], base: str, count: int) -> list[str]:
    while any(f"{base}{k}" in taken for k in range(count + 1)):
        base = "_" + base
    return [f"{base}{k}" for k in range(count + 1)]


def graph_variants(g: BipartiteGraph) -> tuple[str, list[BipartiteGraph]]:
    """μ and the graphs G_0 … G_{|V|+1}."""
    size = len(g.vertices)
    names = _fresh(set(g.vertices), "mu", size + 1)
    mu, fresh = names[0], names[1:]

    variants = [BipartiteGraph(g.x + (mu,), g.y, g.edges + tuple((mu, y) for y in g.y))]
    for i in range(1, size + 2):
        extra = tuple(fresh[:i])
        variants.append(
            BipartiteGraph(g.x + (mu,), g.y + extra, g.edges + tuple((mu, y) for y in extra))
        )
    return mu, variants


def independent_set_sizes_via_shapley(
    f: PathFixture,
    chi: int,
    g: BipartiteGraph,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    threads: int | None = None,
    limit: int | None = None,
) -> tuple[int, ...]:
    """IS(G, j) for j = 0..|V|."""
    bound = settings.IS_COUNT_VERTEX_LIMIT if limit is None else limit
    _check_vertices(g, bound, "independent-set pipeline")
    n = len(g.vertices)
    mu, variants = graph_variants(g)

    def variant_value(i: int) -> Fraction:
        encoded = bipartite_encoding(f, chi, variants[i])
        game = game_from_kb(
            encoded.pk, encoded.query, reasoner=reasoner, depth_limit=depth_limit, name=f"G_{i}"
        )
        value = shapley_exact_subset(
            game, encoded.endogenous_for(mu), threads=1, limit=game.n
        )
        logger.info(f"Variant G_{i} of {n + 1}: Sh(mu) = {value}")
        return value

    values = parallel_map(variant_value, list(range(n + 2)), threads)

    first = Fraction(factorial(n + 1), len(g.y) + 1)
    second = (1 - values[0]) * factorial(n + 1) - first

    matrix = []
    rhs = []
    for i in range(1, n + 2):
        matrix.append([factorial(j) * factorial(n + i - j) for j in range(n + 1)])
        placements = comb(n + i + 1, i) * factorial(i)
        rhs.append(factorial(n + i + 1) * (1 - values[i]) - placements * second)

    solution = solve_linear_exact(LinearSystem.of(matrix, rhs))
    counts = []
    for j, value in enumerate(solution):
        if value.denominator != 1 or value < 0:
            raise ReductionError(
                f"IS(G, {j}) is not a nonnegative integer",
                details={"j": j, "value": f"{value.numerator}/{value.denominator}"},
            )
        counts.append(int(value))
    logger.info(f"Independent sets by size: {counts}")
    return tuple(counts)


def count_independent_sets_via_shapley(
    f: PathFixture, chi: int, g: BipartiteGraph, **options
) -> int:
    return sum(independent_set_sizes_via_shapley(f, chi, g, **options))
