"""
Immutable value types for knowledge bases and Boolean queries.

Concept names start uppercase, role names and individuals lowercase. Every
collection iterates in lexicographic order of the rendered text so that
output never depends on hash seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from shapql.core.enums import Dialect
from shapql.core.exceptions import ValidationError


# ── roles ────────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class Role:
    name: str
    inverted: bool = False

    def inverse(self) -> Role:
        return Role(self.name, not self.inverted)

    def __str__(self) -> str:
        return f"inv({self.name})" if self.inverted else self.name


# ── concepts ─────────────────────────────────────────────────────


class Concept:
    """Base of the concept syntax tree."""

    __slots__ = ()

    def concept_names(self) -> frozenset[str]:
        return frozenset()

    def role_names(self) -> frozenset[str]:
        return frozenset()

    def mentions(self, kind: type[Concept]) -> bool:
        return isinstance(self, kind)


@dataclass(frozen=True)
class Top(Concept):
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Bot(Concept):
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class ConceptName(Concept):
    name: str

    def concept_names(self) -> frozenset[str]:
        return frozenset({self.name})

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class And(Concept):
    left: Concept
    right: Concept

    def concept_names(self) -> frozenset[str]:
        return self.left.concept_names() | self.right.concept_names()

    def role_names(self) -> frozenset[str]:
        return self.left.role_names() | self.right.role_names()

    def mentions(self, kind: type[Concept]) -> bool:
        return (
            isinstance(self, kind)
            or self.left.mentions(kind)
            or self.right.mentions(kind)
        )

    def conjuncts(self) -> list[Concept]:
        parts: list[Concept] = []
        for side in (self.left, self.right):
            if isinstance(side, And):
                parts.extend(side.conjuncts())
            else:
                parts.append(side)
        return parts

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, And) else str(self.right)
        return f"{self.left} and {right}"


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    filler: Concept = field(default_factory=Top)

    def concept_names(self) -> frozenset[str]:
        return self.filler.concept_names()

    def role_names(self) -> frozenset[str]:
        return frozenset({self.role.name}) | self.filler.role_names()

    def mentions(self, kind: type[Concept]) -> bool:
        return isinstance(self, kind) or self.filler.mentions(kind)

    def __str__(self) -> str:
        return f"exists {self.role}.{_primary(self.filler)}"


@dataclass(frozen=True)
class Not(Concept):
    operand: Concept

    def concept_names(self) -> frozenset[str]:
        return self.operand.concept_names()

    def role_names(self) -> frozenset[str]:
        return self.operand.role_names()

    def mentions(self, kind: type[Concept]) -> bool:
        return isinstance(self, kind) or self.operand.mentions(kind)

    def __str__(self) -> str:
        return f"not {_primary(self.operand)}"


def _primary(concept: Concept) -> str:
    return f"({concept})" if isinstance(concept, And) else str(concept)


# ── axioms ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class ConceptInclusion:
    lhs: Concept
    rhs: Concept

    def concept_names(self) -> frozenset[str]:
        return self.lhs.concept_names() | self.rhs.concept_names()

    def role_names(self) -> frozenset[str]:
        return self.lhs.role_names() | self.rhs.role_names()

    def __str__(self) -> str:
        return f"{self.lhs} sub {self.rhs}"


@dataclass(frozen=True)
class RoleInclusion:
    lhs: Role
    rhs: Role
    negated: bool = False

    def concept_names(self) -> frozenset[str]:
        return frozenset()

    def role_names(self) -> frozenset[str]:
        return frozenset({self.lhs.name, self.rhs.name})

    def __str__(self) -> str:
        negation = "not " if self.negated else ""
        return f"{self.lhs} sub {negation}{self.rhs}"


Axiom = Union[ConceptInclusion, RoleInclusion]


# ── assertions ───────────────────────────────────────────────────


@dataclass(frozen=True)
class ConceptAssertion:
    concept: str
    individual: str

    def individuals(self) -> tuple[str, ...]:
        return (self.individual,)

    def normalized(self) -> ConceptAssertion:
        return self

    def rename(self, mapping: dict[str, str]) -> ConceptAssertion:
        return ConceptAssertion(self.concept, mapping[self.individual])

    def as_fact(self) -> tuple[str, tuple[str, ...]]:
        return self.concept, (self.individual,)

    def __str__(self) -> str:
        return f"{self.concept}({self.individual})"


@dataclass(frozen=True)
class RoleAssertion:
    role: Role
    subject: str
    object: str

    def individuals(self) -> tuple[str, ...]:
        return (self.subject, self.object)

    def normalized(self) -> RoleAssertion:
        if self.role.inverted:
            return RoleAssertion(Role(self.role.name), self.object, self.subject)
        return self

    def rename(self, mapping: dict[str, str]) -> RoleAssertion:
        return RoleAssertion(self.role, mapping[self.subject], mapping[self.object])

    def as_fact(self) -> tuple[str, tuple[str, ...]]:
        forward = self.normalized()
        return forward.role.name, (forward.subject, forward.object)

    def __str__(self) -> str:
        return f"{self.role}({self.subject},{self.object})"


Assertion = Union[ConceptAssertion, RoleAssertion]
Player = Union[ConceptAssertion, RoleAssertion, ConceptInclusion, RoleInclusion]


def is_assertion(element: object) -> bool:
    return isinstance(element, (ConceptAssertion, RoleAssertion))


def element_key(element: Player) -> tuple[int, str]:
    """Total order on players: assertions before axioms, then by text."""
    return (0 if is_assertion(element) else 1, str(element))


# ── ABoxes ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class ABox:
    assertions: frozenset = frozenset()

    def __post_init__(self):
        normalized = frozenset(a.normalized() for a in self.assertions)
        object.__setattr__(self, "assertions", normalized)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.assertions)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, RoleAssertion):
            item = item.normalized()
        return item in self.assertions

    def sorted(self) -> list[Assertion]:
        return sorted(self.assertions, key=str)

    def individuals(self) -> frozenset[str]:
        return frozenset(ind for a in self.assertions for ind in a.individuals())

    def concept_names(self) -> frozenset[str]:
        return frozenset(
            a.concept for a in self.assertions if isinstance(a, ConceptAssertion)
        )

    def role_names(self) -> frozenset[str]:
        return frozenset(
            a.role.name for a in self.assertions if isinstance(a, RoleAssertion)
        )

    def union(self, other: ABox | frozenset | set) -> ABox:
        extra = other.assertions if isinstance(other, ABox) else frozenset(other)
        return ABox(self.assertions | extra)

    def difference(self, other: ABox | frozenset | set) -> ABox:
        removed = other.assertions if isinstance(other, ABox) else frozenset(
            a.normalized() for a in other
        )
        return ABox(self.assertions - removed)

    def facts(self) -> list[tuple[str, tuple[str, ...]]]:
        return [a.as_fact() for a in self.sorted()]


# ── queries ──────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


Term = Union[str, Variable]


@dataclass(frozen=True)
class Atom:
    predicate: str
    terms: tuple

    def __post_init__(self):
        if len(self.terms) not in (1, 2):
            raise ValidationError(
                f"Atom {self.predicate} must be unary or binary", field="terms"
            )

    def variables(self) -> frozenset[Variable]:
        return frozenset(t for t in self.terms if isinstance(t, Variable))

    def constants(self) -> frozenset[str]:
        return frozenset(t for t in self.terms if not isinstance(t, Variable))

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(str(t) for t in self.terms)})"


@dataclass(frozen=True)
class CQ:
    atoms: frozenset

    def sorted_atoms(self) -> list[Atom]:
        return sorted(self.atoms, key=str)

    def variables(self) -> frozenset[Variable]:
        return frozenset(v for atom in self.atoms for v in atom.variables())

    def constants(self) -> frozenset[str]:
        return frozenset(c for atom in self.atoms for c in atom.constants())

    def concept_names(self) -> frozenset[str]:
        return frozenset(a.predicate for a in self.atoms if len(a.terms) == 1)

    def role_names(self) -> frozenset[str]:
        return frozenset(a.predicate for a in self.atoms if len(a.terms) == 2)

    def components(self) -> tuple[CQ, ...]:
        """Connected components; atoms are linked through shared terms."""
        from shapql.modules.kb.service import group_by_shared_terms

        groups = group_by_shared_terms(
            [(atom, tuple(str(t) for t in atom.terms)) for atom in self.sorted_atoms()]
        )
        return tuple(CQ(frozenset(group)) for group in groups)

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return "q :- " + ", ".join(str(a) for a in self.sorted_atoms()) + "."


@dataclass(frozen=True)
class Ucq:
    disjuncts: tuple

    def constants(self) -> frozenset[str]:
        return frozenset(c for d in self.disjuncts for c in d.constants())

    def concept_names(self) -> frozenset[str]:
        return frozenset(n for d in self.disjuncts for n in d.concept_names())

    def atom_count(self) -> int:
        return max((len(d) for d in self.disjuncts), default=0)

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.disjuncts)


@dataclass(frozen=True)
class Reach:
    role: str
    source: str
    target: str

    def __str__(self) -> str:
        return f"reach({self.role}, {self.source}, {self.target})."


@dataclass(frozen=True)
class AxiomGoal:
    axiom: ConceptInclusion

    def __str__(self) -> str:
        return f"axiom {self.axiom}."


BooleanQuery = Union[Ucq, Reach, AxiomGoal]


# ── partitioned knowledge bases ──────────────────────────────────


@dataclass(frozen=True)
class PartitionedKB:
    abox_endo: ABox = field(default_factory=ABox)
    abox_exo: ABox = field(default_factory=ABox)
    tbox_endo: frozenset = frozenset()
    tbox_exo: frozenset = frozenset()
    dialect: Dialect = Dialect.ELHI_BOT

    def __post_init__(self):
        shared = self.abox_endo.assertions & self.abox_exo.assertions
        if shared:
            raise ValidationError(
                "Assertions cannot be both endogenous and exogenous",
                field="abox",
                errors=sorted(str(a) for a in shared),
            )
        shared_axioms = frozenset(self.tbox_endo) & frozenset(self.tbox_exo)
        if shared_axioms:
            raise ValidationError(
                "Axioms cannot be both endogenous and exogenous",
                field="tbox",
                errors=sorted(str(a) for a in shared_axioms),
            )

    def players(self) -> tuple[Player, ...]:
        return tuple(self.abox_endo.sorted()) + tuple(sorted(self.tbox_endo, key=str))

    def full_abox(self) -> ABox:
        return self.abox_endo.union(self.abox_exo)

    def full_tbox(self) -> frozenset:
        return frozenset(self.tbox_endo) | frozenset(self.tbox_exo)
