"""
Encoding a bipartite graph at an interface of a path fixture.

a_χ is replaced by one copy b_x per x ∈ X and a_{χ+1} by one copy c_y per
y ∈ Y, each copy carrying its own copy of the part hanging below. The
assertions R_χ(a_{χ-1}, b_x) and R_{χ+2}(c_y, a_{χ+2}) are the players;
every other assertion is exogenous. A copy of ``u`` for vertex ``v`` is
named ``u~v``.
"""

import logging

from shapql.core.config import settings
from shapql.core.exceptions import FixtureError, NameClashError, SizeLimitError
from shapql.modules.games.service import game_from_kb
from shapql.modules.hardness_lab.interfaces import classify_interface, require_interface
from shapql.modules.hardness_lab.models import BipartiteGraph, EncodedInstance, PathFixture
from shapql.modules.kb.models import ABox, Assertion, PartitionedKB
from shapql.modules.kb.service import apply_homomorphism
from shapql.modules.reasoner.service import Reasoner

logger = logging.getLogger(__name__)


def _rename(assertion: Assertion, mapping: dict[str, str]) -> Assertion:
    return assertion.rename({u: mapping.get(u, u) for u in assertion.individuals()})


def _individuals(assertions: frozenset, anchor: str) -> set[str]:
    return {anchor} | {u for a in assertions for u in a.individuals()}


def bipartite_encoding(f: PathFixture, chi: int, g: BipartiteGraph) -> EncodedInstance:
    require_interface(f, chi)
    a = f.individuals
    incoming, middle, outgoing = f.path[chi - 1], f.path[chi], f.path[chi + 1]
    below_x = classify_interface(f, chi).below
    below_y = classify_interface(f, chi + 1).below
    copied_x = _individuals(below_x, a[chi])
    copied_y = _individuals(below_y, a[chi + 1])

    constants = f.query.constants() & (copied_x | copied_y)
    if constants:
        raise FixtureError(
            "Query constants cannot sit in a copied part",
            details={"constants": sorted(constants)},
        )

    copies_x = {x: {u: f"{u}~{x}" for u in copied_x} for x in g.x}
    copies_y = {y: {u: f"{u}~{y}" for u in copied_y} for y in g.y}
    taken = set(f.abox.individuals())
    for copies in (*copies_x.values(), *copies_y.values()):
        for name in copies.values():
            if name in taken:
                raise NameClashError(f"Copy name {name} is already used", name=name)
            taken.add(name)

    kept = f.abox.assertions - below_x - below_y - {incoming, middle, outgoing}
    exo = set(kept)
    endo = set()
    eta: dict = {}
    rho = {u: u for u in f.abox.individuals()}

    for x, mapping in copies_x.items():
        exo.update(_rename(assertion, mapping) for assertion in below_x)
        player = _rename(incoming, mapping).normalized()
        endo.add(player)
        eta[player] = x
        rho.update({copy: original for original, copy in mapping.items()})
    for y, mapping in copies_y.items():
        exo.update(_rename(assertion, mapping) for assertion in below_y)
        player = _rename(outgoing, mapping).normalized()
        endo.add(player)
        eta[player] = y
        rho.update({copy: original for original, copy in mapping.items()})
    for x, y in g.edges:
        exo.add(_rename(middle, {**copies_x[x], **copies_y[y]}))

    pk = PartitionedKB(
        abox_endo=ABox(frozenset(endo)),
        abox_exo=ABox(frozenset(exo)),
        tbox_exo=frozenset(f.tbox),
        dialect=f.dialect,
    )
    logger.debug(
        f"Encoded |X|={len(g.x)}, |Y|={len(g.y)}, |E|={len(g.edges)} at a_{chi}: "
        f"{len(endo)} endogenous, {len(pk.abox_exo)} exogenous assertions"
    )
    return EncodedInstance(pk=pk, query=f.query, eta=eta, rho=rho)


def collapse(encoded: EncodedInstance) -> ABox:
    """Map every copy back to its original individual."""
    return apply_homomorphism(encoded.pk.full_abox(), encoded.rho)


def verify_coalition_bijection(
    encoded: EncodedInstance,
    g: BipartiteGraph,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    limit: int | None = None,
) -> bool:
    """Every coalition entails the query iff its vertices are not independent."""
    bound = settings.BIJECTION_VERTEX_LIMIT if limit is None else limit
    size = len(g.vertices)
    if size > bound:
        raise SizeLimitError(
            f"{size} vertices exceed the bijection limit of {bound}",
            limit=bound,
            actual=size,
        )

    game = game_from_kb(
        encoded.pk, encoded.query, reasoner=reasoner, depth_limit=depth_limit, name="encoding"
    )
    mismatches = []
    for mask in range(1 << game.n):
        coalition = game.coalition(mask)
        vertices = [encoded.eta[player] for player in coalition]
        if game.value(mask) == g.is_independent(vertices):
            mismatches.append(sorted(vertices))

    if mismatches:
        logger.warning(
            f"{len(mismatches)} coalitions break the bijection, first: {mismatches[0]}"
        )
    return not mismatches
