import logging
from collections.abc import Callable, Iterable, Sequence
from typing import Any

from shapql.modules.games.models import CooperativeGame, mask_of
from shapql.modules.kb.models import BooleanQuery, PartitionedKB, is_assertion
from shapql.modules.reasoner.service import Reasoner, default_reasoner

logger = logging.getLogger(__name__)


def game_from_kb(
    pk: PartitionedKB,
    query: BooleanQuery,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    name: str = "kb",
) -> CooperativeGame:
    """Players are the endogenous assertions then axioms; v_B = (B ∪ exo ⊨ query)."""
    oracle_reasoner = reasoner or default_reasoner
    players = pk.players()

    def oracle(mask: int) -> bool:
        chosen = [players[i] for i in range(len(players)) if mask >> i & 1]
        abox = pk.abox_exo.union(frozenset(p for p in chosen if is_assertion(p)))
        tbox = frozenset(pk.tbox_exo) | frozenset(p for p in chosen if not is_assertion(p))
        return oracle_reasoner.entails_strict(abox, tbox, query, depth_limit)

    logger.debug(f"Built game {name!r} with {len(players)} players for {query}")
    return CooperativeGame(players, oracle, name=name)


def game_from_supports(
    players: Sequence[Any], supports: Iterable[Iterable[Any]], name: str = "supports"
) -> CooperativeGame:
    """The monotone game whose winning coalitions cover one of ``supports``."""
    index = {player: i for i, player in enumerate(players)}
    masks = [mask_of(index[p] for p in support) for support in supports]

    def oracle(mask: int) -> bool:
        return any(mask & support == support for support in masks)

    return CooperativeGame(players, oracle, name=name)


def game_from_function(
    players: Sequence[Any], fn: Callable[[frozenset], bool], name: str = "function"
) -> CooperativeGame:
    """Wrap a predicate on player sets."""
    ordered = tuple(players)

    def oracle(mask: int) -> bool:
        return fn(frozenset(p for i, p in enumerate(ordered) if mask >> i & 1))

    return CooperativeGame(ordered, oracle, name=name)
