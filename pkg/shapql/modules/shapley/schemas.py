from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from shapql.core.enums import MethodTag


class ShapleyResult(BaseModel):
    """Exact Shapley value of every player, in player order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    players: tuple[Any, ...] = Field(default_factory=tuple)
    values: tuple[Fraction, ...] = Field(default_factory=tuple)
    method: MethodTag = MethodTag.SUBSET

    @property
    def n(self) -> int:
        return len(self.players)

    def value_of(self, player: Any) -> Fraction:
        return self.values[self.players.index(player)]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return {str(player): value for player, value in zip(self.players, self.values)}


class Estimate(BaseModel):
    """Sampled Shapley value of a single player."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    player: Any
    value: Fraction
    samples: int
    seed: int
    method: MethodTag
    epsilon: Fraction
    delta: Fraction
    effective_epsilon: Fraction
