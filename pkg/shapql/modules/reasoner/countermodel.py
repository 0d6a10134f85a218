"""
Bounded search for finite countermodels of UCQ entailment.

Depth-first over the choice of witness for each open existential
requirement: an existing element first, then a new anonymous one while the
domain bound allows. Branches are cut as soon as the query matches or ⊥ is
derived, both being preserved by adding facts. A candidate is only returned
after it has been checked against the original axioms.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from shapql.core.exceptions import ValidationError
from shapql.modules.kb.models import (
    ABox,
    And,
    Axiom,
    Bot,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    Exists,
    Not,
    Role,
    RoleAssertion,
    Top,
    Ucq,
    Variable,
)
from shapql.modules.kb.service import FactIndex, match_atoms
from shapql.modules.reasoner.chase import Saturation
from shapql.modules.reasoner.models import TOP
from shapql.modules.reasoner.normalize import normalize_tbox

logger = logging.getLogger(__name__)

ANON_PREFIX = "_:m"


@dataclass(frozen=True)
class FiniteModel:
    domain: tuple[str, ...]
    concepts: dict[str, frozenset[str]] = field(default_factory=dict)
    roles: dict[str, frozenset[tuple[str, str]]] = field(default_factory=dict)

    def role_extension(self, role: Role) -> frozenset[tuple[str, str]]:
        pairs = self.roles.get(role.name, frozenset())
        if role.inverted:
            return frozenset((y, x) for x, y in pairs)
        return pairs

    def extension(self, concept: Concept) -> frozenset[str]:
        if isinstance(concept, Top):
            return frozenset(self.domain)
        if isinstance(concept, Bot):
            return frozenset()
        if isinstance(concept, ConceptName):
            return self.concepts.get(concept.name, frozenset())
        if isinstance(concept, And):
            return self.extension(concept.left) & self.extension(concept.right)
        if isinstance(concept, Exists):
            filler = self.extension(concept.filler)
            return frozenset(
                x for x, y in self.role_extension(concept.role) if y in filler
            )
        if isinstance(concept, Not):
            return frozenset(self.domain) - self.extension(concept.operand)
        raise ValueError(f"Unknown concept {concept!r}")

    def satisfies_axiom(self, axiom: Axiom) -> bool:
        if isinstance(axiom, ConceptInclusion):
            return self.extension(axiom.lhs) <= self.extension(axiom.rhs)
        lhs = self.role_extension(axiom.lhs)
        rhs = self.role_extension(axiom.rhs)
        if axiom.negated:
            return not (lhs & rhs)
        return lhs <= rhs

    def satisfies_abox(self, abox: ABox) -> bool:
        for assertion in abox.assertions:
            if isinstance(assertion, ConceptAssertion):
                if assertion.individual not in self.concepts.get(assertion.concept, ()):
                    return False
            elif (assertion.subject, assertion.object) not in self.role_extension(
                assertion.role
            ):
                return False
        return True

    def satisfies_query(self, query: Ucq) -> bool:
        index = FactIndex(self.facts())
        return any(
            match_atoms(
                [(atom.predicate, atom.terms) for atom in cq.sorted_atoms()],
                index,
                is_variable=lambda term: isinstance(term, Variable),
            )
            is not None
            for cq in query.disjuncts
        )

    def is_model_of(self, abox: ABox, tbox: Iterable[Axiom]) -> bool:
        return self.satisfies_abox(abox) and all(self.satisfies_axiom(a) for a in tbox)

    def facts(self) -> list[tuple[str, tuple[str, ...]]]:
        result = [
            (name, (element,))
            for name in sorted(self.concepts)
            for element in sorted(self.concepts[name])
        ]
        for name in sorted(self.roles):
            result.extend((name, pair) for pair in sorted(self.roles[name]))
        return result

    def as_abox(self, concept_names: frozenset[str] | None = None) -> ABox:
        assertions = set()
        for name, members in self.concepts.items():
            if concept_names is not None and name not in concept_names:
                continue
            assertions.update(ConceptAssertion(name, m) for m in members)
        for name, pairs in self.roles.items():
            assertions.update(RoleAssertion(Role(name), x, y) for x, y in pairs)
        return ABox(frozenset(assertions))


def _model_from_state(state: Saturation) -> FiniteModel:
    concepts: dict[str, set[str]] = {}
    for element in state.elements:
        for name in state.labels.get(element, ()):
            if name != TOP:
                concepts.setdefault(name, set()).add(element)
    return FiniteModel(
        domain=tuple(state.elements),
        concepts={name: frozenset(members) for name, members in concepts.items()},
        roles={name: frozenset(pairs) for name, pairs in state.edges.items() if pairs},
    )


def find_countermodel(
    abox: ABox, tbox: Iterable[Axiom], query: Ucq, max_domain: int
) -> FiniteModel | None:
    """A model of (abox, tbox) with at most ``max_domain`` elements violating ``query``."""
    axioms = frozenset(tbox)
    individuals = sorted(abox.individuals())
    if max_domain < len(individuals):
        raise ValidationError(
            "Domain bound is smaller than the number of individuals",
            field="max_domain",
            errors=[f"{max_domain} < {len(individuals)}"],
        )

    normalized = normalize_tbox(axioms)
    disjuncts = [
        [(atom.predicate, atom.terms) for atom in cq.sorted_atoms()]
        for cq in query.disjuncts
    ]
    explored = 0

    def query_holds(state: Saturation) -> bool:
        index = FactIndex(state.facts())
        return any(
            match_atoms(atoms, index, lambda term: isinstance(term, Variable)) is not None
            for atoms in disjuncts
        )

    def first_requirement(state: Saturation):
        for element in state.elements:
            requirements = state.open_requirements(element)
            if requirements:
                return element, requirements[0]
        return None

    def search(state: Saturation) -> FiniteModel | None:
        nonlocal explored
        explored += 1
        if not state.propagate() or query_holds(state):
            return None

        pending = first_requirement(state)
        if pending is None:
            model = _model_from_state(state)
            if model.is_model_of(abox, axioms) and not model.satisfies_query(query):
                return model
            logger.warning("Discarding candidate that fails the semantic check")
            return None

        element, rule = pending
        candidates = list(state.elements)
        if len(state.elements) < max_domain:
            candidates.append(f"{ANON_PREFIX}{len(state.elements) - len(individuals) + 1}")

        for witness in candidates:
            branch = state.copy()
            if witness not in branch.elements:
                branch.elements.append(witness)
            branch.add_edge(rule.role, element, witness)
            branch.add_label(witness, rule.filler)
            found = search(branch)
            if found is not None:
                return found
        return None

    result = search(Saturation.from_abox(abox, normalized))
    logger.debug(
        f"Countermodel search explored {explored} states "
        f"(max_domain={max_domain}, found={result is not None})"
    )
    return result
