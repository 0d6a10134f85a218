from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from shapql.core.exceptions import ValidationError
from shapql.core.validators import format_rational
from shapql.modules.kb.models import ABox, Assertion


@dataclass(frozen=True)
class ProbabilisticABox:
    """Tuple-independent ABox: every assertion carries a probability in (0,1]."""

    probabilities: dict = field(default_factory=dict)

    def __post_init__(self):
        normalized = {}
        for assertion, probability in self.probabilities.items():
            value = Fraction(probability)
            if value <= 0 or value > 1:
                raise ValidationError(
                    "Probability outside (0,1]",
                    field="probabilities",
                    errors=[f"{assertion} @ {format_rational(value)}"],
                )
            normalized[assertion.normalized()] = value
        object.__setattr__(self, "probabilities", normalized)

    @classmethod
    def uniform(cls, abox: ABox, probability: Fraction) -> ProbabilisticABox:
        return cls({assertion: probability for assertion in abox.assertions})

    def abox(self) -> ABox:
        return ABox(frozenset(self.probabilities))

    def certain(self) -> list[Assertion]:
        return sorted((a for a, p in self.probabilities.items() if p == 1), key=str)

    def uncertain(self) -> list[Assertion]:
        return sorted((a for a, p in self.probabilities.items() if p < 1), key=str)

    def image(self) -> frozenset[Fraction]:
        return frozenset(self.probabilities.values())

    def __len__(self) -> int:
        return len(self.probabilities)

    def __hash__(self) -> int:
        return hash(frozenset(self.probabilities.items()))


class QStarIdentity(BaseModel):
    """Both printed forms of Pr(Q*) next to the brute-force value."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pr_bottom: Fraction
    pr_query: Fraction
    pr_qstar: Fraction
    minus_form: Fraction
    plus_form: Fraction

    @property
    def minus_holds(self) -> bool:
        return self.pr_qstar == self.minus_form

    @property
    def plus_holds(self) -> bool:
        return self.pr_qstar == self.plus_form
