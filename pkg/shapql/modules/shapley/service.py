"""
Exact Shapley values.

All methods accumulate integer numerators over the common denominator n!
and divide once, so results are exact and independent of chunking.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Any

from shapql.core.concurrency import chunk_ranges, parallel_map, resolve_threads
from shapql.core.config import settings
from shapql.core.enums import Method, MethodTag
from shapql.core.exceptions import SizeLimitError, ValidationError
from shapql.modules.games.models import CooperativeGame
from shapql.modules.shapley.schemas import ShapleyResult
from shapql.modules.supports.schemas import SupportSet
from shapql.modules.supports.service import (
    enumerate_supports,
    require_complete,
    signed_unions,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def _weights(n: int) -> tuple[int, ...]:
    """k!(n-k-1)! for k = 0..n-1."""
    return tuple(factorial(k) * factorial(n - k - 1) for k in range(n))


def shapley_coefficient(n: int, k: int) -> Fraction:
    return Fraction(_weights(n)[k], factorial(n))


def _check_limit(n: int, limit: int, method: str) -> None:
    if n > limit:
        raise SizeLimitError(
            f"{n} players exceed the {method} limit of {limit}", limit=limit, actual=n
        )


# ── subset form ──────────────────────────────────────────────────


def _subset_numerators(
    game: CooperativeGame, indices: list[int], threads: int | None
) -> list[int]:
    n = game.n
    weights = _weights(n)
    workers = resolve_threads(threads)
    chunks = chunk_ranges(1 << n, workers * 4)

    scores_by_chunk = parallel_map(
        lambda chunk: [game.score(mask) for mask in chunk], chunks, workers
    )
    scores = [s for chunk_scores in scores_by_chunk for s in chunk_scores]

    def accumulate(chunk: range) -> list[int]:
        partial = [0] * len(indices)
        for mask in chunk:
            base = scores[mask]
            weight = weights[mask.bit_count()] if mask != game.full_mask else 0
            for slot, index in enumerate(indices):
                bit = 1 << index
                if mask & bit:
                    continue
                diff = scores[mask | bit] - base
                if diff:
                    partial[slot] += diff * weight
        return partial

    totals = [0] * len(indices)
    for partial in parallel_map(accumulate, chunks, workers):
        for slot, value in enumerate(partial):
            totals[slot] += value
    return totals


def shapley_exact_subset(
    game: CooperativeGame,
    player: Any,
    *,
    threads: int | None = None,
    limit: int | None = None,
) -> Fraction:
    bound = settings.EXACT_PLAYER_LIMIT if limit is None else limit
    _check_limit(game.n, bound, "exact subset")
    index = game.index_of(player)
    (numerator,) = _subset_numerators(game, [index], threads)
    return Fraction(numerator, factorial(game.n))


# ── permutation form ─────────────────────────────────────────────


def _permutation_numerators(game: CooperativeGame) -> list[int]:
    totals = [0] * game.n
    for order in permutations(range(game.n)):
        mask = 0
        before = game.score(0)
        for index in order:
            mask |= 1 << index
            after = game.score(mask)
            totals[index] += after - before
            before = after
    return totals


def shapley_exact_permutation(
    game: CooperativeGame, player: Any, *, limit: int | None = None
) -> Fraction:
    bound = settings.PERMUTATION_PLAYER_LIMIT if limit is None else limit
    _check_limit(game.n, bound, "permutation")
    index = game.index_of(player)
    return Fraction(_permutation_numerators(game)[index], factorial(game.n))


# ── inclusion-exclusion over supports ────────────────────────────


def _covering_counts(signed: dict[int, int], n: int) -> list[int]:
    """For k = 0..n-1, coalitions of size k avoiding one fixed player that
    contain some member of the family behind ``signed``."""
    counts = [0] * n
    for union, coefficient in signed.items():
        size = union.bit_count()
        for k in range(size, n):
            counts[k] -= coefficient * comb(n - 1 - size, k - size)
    return counts


def _support_numerator(masks: list[int], n: int, index: int) -> int:
    bit = 1 << index
    with_player = _covering_counts(signed_unions([m & ~bit for m in masks]), n)
    without_player = _covering_counts(signed_unions([m for m in masks if not m & bit]), n)
    weights = _weights(n)
    return sum(
        (with_player[k] - without_player[k]) * weights[k] for k in range(n)
    )


def shapley_via_supports(ss: SupportSet, n: int, player: Any) -> Fraction:
    require_complete(ss)
    if player not in ss.players:
        raise ValidationError(f"{player} is not a player", field="player")
    if n < len(ss.players):
        raise ValidationError(
            "Player count is smaller than the support universe", field="n"
        )
    index = ss.players.index(player)
    return Fraction(_support_numerator(ss.masks(), n, index), factorial(n))


# ── all players ──────────────────────────────────────────────────


def _result(game: CooperativeGame, numerators: list[int], method: MethodTag) -> ShapleyResult:
    denominator = factorial(game.n)
    return ShapleyResult(
        players=game.players,
        values=tuple(Fraction(num, denominator) for num in numerators),
        method=method,
    )


def shapley_all(
    game: CooperativeGame,
    method: Method | None = None,
    *,
    supports: SupportSet | None = None,
    threads: int | None = None,
) -> ShapleyResult:
    """Values for every player; without an explicit method the subset sweep is
    used up to the exact limit and supports beyond it."""
    n = game.n
    if n == 0:
        return ShapleyResult(players=(), values=(), method=MethodTag.SUBSET)

    if method == Method.PERMUTATION:
        _check_limit(n, settings.PERMUTATION_PLAYER_LIMIT, "permutation")
        result = _result(game, _permutation_numerators(game), MethodTag.PERMUTATION)
    elif method == Method.SUPPORTS or (
        method is None and (supports is not None or n > settings.EXACT_PLAYER_LIMIT)
    ):
        ss = require_complete(supports or enumerate_supports(game, threads=threads))
        if ss.players != game.players:
            raise ValidationError("Support set belongs to another game", field="supports")
        masks = ss.masks()
        numerators = [_support_numerator(masks, n, index) for index in range(n)]
        result = _result(game, numerators, MethodTag.SUPPORTS)
    elif method in (None, Method.EXACT):
        _check_limit(n, settings.EXACT_PLAYER_LIMIT, "exact subset")
        numerators = _subset_numerators(game, list(range(n)), threads)
        result = _result(game, numerators, MethodTag.SUBSET)
    else:
        raise ValidationError(f"Method {method} does not give exact values", field="method")

    logger.info(f"Computed {n} Shapley values for {game.name!r} ({result.method.value})")
    return result
