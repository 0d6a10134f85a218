"""
Minimal-support enumeration.

Supports are found layer by layer in order of cardinality; a candidate that
contains an earlier support is skipped, so every winning candidate is
minimal. When a cap stops the sweep early, completeness is decided with the
minimal transversals of the found supports: a winning coalition avoiding all
of them exists iff the complement of some transversal wins.
"""

import logging
from collections import defaultdict
from collections.abc import Iterable
from itertools import combinations
from typing import Any

from shapql.core.concurrency import chunk_ranges, parallel_map, resolve_threads
from shapql.core.exceptions import IncompleteEnumerationError, ValidationError
from shapql.modules.games.models import CooperativeGame, mask_of, members
from shapql.modules.games.service import game_from_kb
from shapql.modules.kb.models import ABox, BooleanQuery, PartitionedKB, is_assertion
from shapql.modules.kb.service import is_connected
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.supports.schemas import SupportSet

logger = logging.getLogger(__name__)


# ── set-family helpers ───────────────────────────────────────────


def _minimize(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for mask in sorted(set(masks), key=lambda m: (m.bit_count(), m)):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


def minimal_transversals(masks: Iterable[int]) -> list[int]:
    """Minimal hitting sets of a family of bitmasks (Berge's algorithm)."""
    transversals = [0]
    for support in masks:
        extended = set()
        for current in transversals:
            if current & support:
                extended.add(current)
            else:
                extended.update(current | 1 << i for i in members(support))
        transversals = _minimize(extended)
    return sorted(transversals)


def signed_unions(masks: Iterable[int]) -> dict[int, int]:
    """D[U] = Σ (-1)^|G| over non-empty subfamilies G whose union is U."""
    signed: dict[int, int] = defaultdict(int)
    for support in masks:
        updates: dict[int, int] = defaultdict(int)
        updates[support] -= 1
        for union, coefficient in signed.items():
            updates[union | support] -= coefficient
        for union, coefficient in updates.items():
            signed[union] += coefficient
        for union in [u for u, c in signed.items() if c == 0]:
            del signed[union]
    return dict(signed)


# ── enumeration ──────────────────────────────────────────────────


def enumerate_supports(
    game: CooperativeGame, cap: int | None = None, threads: int | None = None
) -> SupportSet:
    n = game.n
    limit = n if cap is None else max(0, min(cap, n))
    workers = resolve_threads(threads)
    found: list[int] = []

    for size in range(limit + 1):
        candidates = [
            mask
            for mask in (mask_of(combo) for combo in combinations(range(n), size))
            if not any(support & mask == support for support in found)
        ]
        if not candidates:
            if size > 0:
                break
            continue

        def evaluate(chunk: range, candidates=candidates) -> list[bool]:
            return [game.value(candidates[i]) for i in chunk]

        verdicts = [
            verdict
            for chunk_result in parallel_map(
                evaluate, chunk_ranges(len(candidates), workers), workers
            )
            for verdict in chunk_result
        ]
        layer = [mask for mask, wins in zip(candidates, verdicts) if wins]
        found.extend(layer)
        if layer:
            logger.info(f"Found {len(layer)} minimal supports of size {size}")
        if 0 in found:
            break

    complete = limit >= n or 0 in found
    if not complete:
        complete = not any(
            game.value(game.full_mask & ~transversal)
            for transversal in minimal_transversals(found)
        )
        if not complete:
            logger.warning(
                f"Support enumeration for {game.name!r} stopped at cap {limit} "
                f"with an open frontier"
            )

    return SupportSet(
        players=game.players,
        supports=tuple(frozenset(game.coalition(mask)) for mask in found),
        complete=complete,
        cap=limit,
    )


def minimal_supports(
    pk: PartitionedKB,
    query: BooleanQuery,
    cap: int | None = None,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    threads: int | None = None,
) -> SupportSet:
    game = game_from_kb(pk, query, reasoner=reasoner, depth_limit=depth_limit)
    return enumerate_supports(game, cap, threads)


def require_complete(ss: SupportSet) -> SupportSet:
    if not ss.complete:
        raise IncompleteEnumerationError(
            f"Minimal supports are incomplete at cap {ss.cap}; raise --cap",
            cap=ss.cap,
        )
    return ss


def is_relevant(
    pk: PartitionedKB,
    query: BooleanQuery,
    player: Any,
    *,
    supports: SupportSet | None = None,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
) -> bool:
    if player not in pk.players():
        raise ValidationError(f"{player} is not an endogenous element", field="player")
    ss = supports or minimal_supports(pk, query, reasoner=reasoner, depth_limit=depth_limit)
    return require_complete(ss).contains_player(player)


def support_size_bound(ss: SupportSet) -> int:
    require_complete(ss)
    return max((len(support) for support in ss.supports), default=0)


def all_supports_connected(ss: SupportSet) -> bool:
    """Every support's assertions form a single connected component."""
    return all(
        is_connected(ABox(frozenset(p for p in support if is_assertion(p))))
        for support in ss.supports
    )


def count_satisfying_coalitions(ss: SupportSet, n: int | None = None) -> int:
    """Number of coalitions covering some support, by inclusion-exclusion."""
    require_complete(ss)
    total = len(ss.players) if n is None else n
    return -sum(
        coefficient * 2 ** (total - union.bit_count())
        for union, coefficient in signed_unions(ss.masks()).items()
    )
