"""
Cooperative 0/1 games over knowledge-base elements.

Coalitions are bitmasks over the player tuple: bit i set means
``players[i]`` is in the coalition. ``value`` is the raw verdict v_B
(exogenous context included); ``score`` is the wealth v_B - v_x.
"""

from __future__ import annotations

import threading
from collections.abc import Callable, Iterable, Sequence
from typing import Any

from shapql.core.exceptions import ValidationError
from shapql.core.output import OracleStats


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def members(mask: int) -> list[int]:
    result = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


class CooperativeGame:
    """Players plus a memoized, thread-safe coalition oracle."""

    def __init__(self, players: Sequence[Any], oracle: Callable[[int], bool], name: str = "game"):
        self.players: tuple = tuple(players)
        self.name = name
        self._oracle = oracle
        self._index = {player: i for i, player in enumerate(self.players)}
        if len(self._index) != len(self.players):
            raise ValidationError("Duplicate player in game", field="players")
        self._memo: dict[int, bool] = {}
        self._lock = threading.Lock()
        self._calls = 0
        self._hits = 0
        self._exo_satisfied: bool | None = None

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def exo_satisfied(self) -> bool:
        if self._exo_satisfied is None:
            self._exo_satisfied = self.value(0)
        return self._exo_satisfied

    def index_of(self, player: Any) -> int:
        try:
            return self._index[player]
        except KeyError:
            raise ValidationError(
                f"{player} is not a player of {self.name}", field="player"
            ) from None

    def mask(self, coalition: Iterable[Any]) -> int:
        return mask_of(self.index_of(player) for player in coalition)

    def coalition(self, mask: int) -> tuple:
        return tuple(self.players[i] for i in members(mask))

    def value(self, mask: int) -> bool:
        with self._lock:
            cached = self._memo.get(mask)
            if cached is not None:
                self._hits += 1
                return cached

        result = bool(self._oracle(mask))

        with self._lock:
            if mask not in self._memo:
                self._calls += 1
                self._memo[mask] = result
        return result

    def score(self, mask: int) -> int:
        if self.exo_satisfied:
            return 0
        return int(self.value(mask))

    def stats(self) -> OracleStats:
        with self._lock:
            return OracleStats(entailment_calls=self._calls, memo_hits=self._hits)

    def __repr__(self) -> str:
        return f"CooperativeGame({self.name!r}, n={self.n})"
