"""
Normal-form rules and the structures the chase builds from them.

Normal forms (A, B concept names or TOP; B may be BOTTOM in the first form):

    A ⊑ B  /  A ⊑ ⊥  /  A1 ⊓ A2 ⊑ B      ConjunctionRule (one or two lhs names)
    ∃R.A ⊑ B                              ExistsLeftRule
    A ⊑ ∃R.B                              ExistsRightRule
    R ⊑ S                                 RoleRule
    R ⊑ ¬S   (DL-Lite only)               RoleClashRule
"""

from __future__ import annotations

from dataclasses import dataclass, field

from shapql.modules.kb.models import ABox, ConceptAssertion, Role, RoleAssertion

TOP = "⊤"
BOTTOM = "⊥"
NULL_PREFIX = "_:n"


@dataclass(frozen=True, order=True)
class ConjunctionRule:
    lhs: tuple[str, ...]
    rhs: str

    def __str__(self) -> str:
        return f"{' ⊓ '.join(self.lhs)} ⊑ {self.rhs}"


@dataclass(frozen=True, order=True)
class ExistsLeftRule:
    role: Role
    filler: str
    rhs: str

    def __str__(self) -> str:
        return f"∃{self.role}.{self.filler} ⊑ {self.rhs}"


@dataclass(frozen=True, order=True)
class ExistsRightRule:
    lhs: str
    role: Role
    filler: str

    def __str__(self) -> str:
        return f"{self.lhs} ⊑ ∃{self.role}.{self.filler}"


@dataclass(frozen=True, order=True)
class RoleRule:
    lhs: Role
    rhs: Role

    def __str__(self) -> str:
        return f"{self.lhs} ⊑ {self.rhs}"


@dataclass(frozen=True, order=True)
class RoleClashRule:
    lhs: Role
    rhs: Role

    def __str__(self) -> str:
        return f"{self.lhs} ⊑ ¬{self.rhs}"


@dataclass(frozen=True)
class NormalizedTBox:
    conjunction_rules: tuple[ConjunctionRule, ...] = ()
    exists_left_rules: tuple[ExistsLeftRule, ...] = ()
    exists_right_rules: tuple[ExistsRightRule, ...] = ()
    role_rules: tuple[RoleRule, ...] = ()
    role_clash_rules: tuple[RoleClashRule, ...] = ()
    # fresh name -> rendered source concept
    fresh: tuple[tuple[str, str], ...] = ()
    concept_names: frozenset[str] = frozenset()

    @property
    def fresh_names(self) -> dict[str, str]:
        return dict(self.fresh)

    def is_empty(self) -> bool:
        return not (
            self.conjunction_rules
            or self.exists_left_rules
            or self.exists_right_rules
            or self.role_rules
            or self.role_clash_rules
        )

    def can_clash(self) -> bool:
        return bool(self.role_clash_rules) or any(
            rule.rhs == BOTTOM for rule in self.conjunction_rules
        )

    def rule_count(self) -> int:
        return (
            len(self.conjunction_rules)
            + len(self.exists_left_rules)
            + len(self.exists_right_rules)
            + len(self.role_rules)
            + len(self.role_clash_rules)
        )


@dataclass
class CanonicalStructure:
    individuals: frozenset[str]
    elements: list[str]
    depth: dict[str, int]
    parent: dict[str, str]
    labels: dict[str, set[str]]
    edges: dict[str, set[tuple[str, str]]]
    depth_limit: int
    saturated: bool
    inconsistent: bool
    fresh_names: frozenset[str] = field(default_factory=frozenset)

    def nulls(self) -> list[str]:
        return [e for e in self.elements if e not in self.individuals]

    def facts(self) -> list[tuple[str, tuple[str, ...]]]:
        result = []
        for element in self.elements:
            for name in sorted(self.labels.get(element, ())):
                if name != TOP:
                    result.append((name, (element,)))
        for role_name in sorted(self.edges):
            for pair in sorted(self.edges[role_name]):
                result.append((role_name, pair))
        return result

    def as_abox(self, concept_names: frozenset[str] | None = None) -> ABox:
        """The structure as facts, dropping TOP and (by default) fresh names."""
        assertions = set()
        for element in self.elements:
            for name in self.labels.get(element, ()):
                if name == TOP or name in self.fresh_names:
                    continue
                if concept_names is not None and name not in concept_names:
                    continue
                assertions.add(ConceptAssertion(name, element))
        for role_name, pairs in self.edges.items():
            for subject, obj in pairs:
                assertions.add(RoleAssertion(Role(role_name), subject, obj))
        return ABox(frozenset(assertions))
