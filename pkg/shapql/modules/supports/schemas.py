from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from shapql.modules.games.models import mask_of
from shapql.modules.kb.models import element_key


class SupportSet(BaseModel):
    """Minimal endogenous supports of a query, in canonical order."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    players: tuple[Any, ...] = Field(default_factory=tuple)
    supports: tuple[frozenset, ...] = Field(default_factory=tuple)
    complete: bool = True
    cap: int = 0

    def masks(self) -> list[int]:
        index = {player: i for i, player in enumerate(self.players)}
        return [mask_of(index[p] for p in support) for support in self.supports]

    def sorted_support(self, support: frozenset) -> list:
        return sorted(support, key=element_key)

    def covers(self, coalition: frozenset) -> bool:
        return any(support <= coalition for support in self.supports)

    def contains_player(self, player: Any) -> bool:
        return any(player in support for support in self.supports)

    def is_trivial(self) -> bool:
        """The exogenous context alone entails the query."""
        return self.supports == (frozenset(),)

    def to_lists(self) -> list[list[str]]:
        return [[str(p) for p in self.sorted_support(s)] for s in self.supports]

    def __len__(self) -> int:
        return len(self.supports)
