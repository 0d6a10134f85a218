from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from shapql.core.enums import Dialect
from shapql.core.exceptions import ValidationError
from shapql.core.validators import ProbabilityValue
from shapql.modules.kb.models import ABox, PartitionedKB
from shapql.modules.kb.service import check_tbox_dialect


class KbDocument(BaseModel):
    """A parsed ``.kbq`` file: partitioned KB plus optional fact probabilities."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dialect: Dialect = Dialect.ELHI_BOT
    tbox_endo: frozenset[Any] = Field(default_factory=frozenset)
    tbox_exo: frozenset[Any] = Field(default_factory=frozenset)
    abox_endo: ABox = Field(default_factory=ABox)
    abox_exo: ABox = Field(default_factory=ABox)
    probabilities: dict[Any, ProbabilityValue] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_document(self) -> "KbDocument":
        shared = self.abox_endo.assertions & self.abox_exo.assertions
        if shared:
            raise ValidationError(
                "Duplicate assertion across endo/exo blocks",
                field="abox",
                errors=sorted(str(a) for a in shared),
            )

        shared_axioms = self.tbox_endo & self.tbox_exo
        if shared_axioms:
            raise ValidationError(
                "Duplicate axiom across endo/exo blocks",
                field="tbox",
                errors=sorted(str(a) for a in shared_axioms),
            )

        check_tbox_dialect(self.tbox_endo | self.tbox_exo, self.dialect)

        known = self.abox_endo.assertions | self.abox_exo.assertions
        unknown = [a for a in self.probabilities if a not in known]
        if unknown:
            raise ValidationError(
                "Probability given for an assertion outside the ABox",
                field="probabilities",
                errors=sorted(str(a) for a in unknown),
            )
        return self

    def to_partitioned_kb(self) -> PartitionedKB:
        return PartitionedKB(
            abox_endo=self.abox_endo,
            abox_exo=self.abox_exo,
            tbox_endo=self.tbox_endo,
            tbox_exo=self.tbox_exo,
            dialect=self.dialect,
        )

    def full_abox(self) -> ABox:
        return self.abox_endo.union(self.abox_exo)

    def full_tbox(self) -> frozenset:
        return self.tbox_endo | self.tbox_exo

    def probability_of(self, assertion: Any) -> Fraction:
        return self.probabilities.get(assertion, Fraction(1))
