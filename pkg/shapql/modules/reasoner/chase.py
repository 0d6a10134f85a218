"""
Depth-bounded restricted chase over a normalized TBox.

Propagation (conjunction, ∃-left and role rules) runs to a fixpoint before
each round of existential rules. An existential requirement A ⊑ ∃R.B on an
element is fired only when no R-successor labelled B exists yet, and never
on an element whose depth has reached the limit. The structure is
``saturated`` when no requirement was left unfired at that limit.
"""

from __future__ import annotations

import logging
from collections import defaultdict

from shapql.modules.kb.models import ABox, ConceptAssertion, Role
from shapql.modules.reasoner.models import (
    BOTTOM,
    NULL_PREFIX,
    TOP,
    CanonicalStructure,
    ExistsRightRule,
    NormalizedTBox,
)

logger = logging.getLogger(__name__)


class Saturation:
    """Mutable labels and role edges closed under the non-generating rules."""

    def __init__(self, tbox: NormalizedTBox, elements: list[str] | None = None):
        self.tbox = tbox
        self.elements: list[str] = list(elements or [])
        self.labels: dict[str, set[str]] = defaultdict(set)
        self.edges: dict[str, set[tuple[str, str]]] = defaultdict(set)
        self.inconsistent = False

    @classmethod
    def from_abox(cls, abox: ABox, tbox: NormalizedTBox) -> Saturation:
        state = cls(tbox, sorted(abox.individuals()))
        for assertion in abox.assertions:
            if isinstance(assertion, ConceptAssertion):
                state.labels[assertion.individual].add(assertion.concept)
            else:
                state.add_edge(assertion.role, assertion.subject, assertion.object)
        return state

    def copy(self) -> Saturation:
        other = Saturation(self.tbox, self.elements)
        other.labels = defaultdict(set, {k: set(v) for k, v in self.labels.items()})
        other.edges = defaultdict(set, {k: set(v) for k, v in self.edges.items()})
        other.inconsistent = self.inconsistent
        return other

    def pairs(self, role: Role) -> set[tuple[str, str]]:
        forward = self.edges.get(role.name, set())
        if role.inverted:
            return {(y, x) for x, y in forward}
        return forward

    def add_edge(self, role: Role, subject: str, obj: str) -> bool:
        pair = (obj, subject) if role.inverted else (subject, obj)
        if pair in self.edges[role.name]:
            return False
        self.edges[role.name].add(pair)
        return True

    def has_label(self, element: str, name: str) -> bool:
        return name == TOP or name in self.labels.get(element, ())

    def add_label(self, element: str, name: str) -> bool:
        if name == TOP or name in self.labels[element]:
            return False
        if name == BOTTOM:
            self.inconsistent = True
        self.labels[element].add(name)
        return True

    def propagate(self) -> bool:
        """Apply non-generating rules to a fixpoint; False once ⊥ is derived."""
        tbox = self.tbox
        changed = True
        while changed and not self.inconsistent:
            changed = False

            for rule in tbox.role_rules:
                for subject, obj in list(self.pairs(rule.lhs)):
                    changed |= self.add_edge(rule.rhs, subject, obj)

            for rule in tbox.role_clash_rules:
                if self.pairs(rule.lhs) & self.pairs(rule.rhs):
                    self.inconsistent = True
                    return False

            for rule in tbox.exists_left_rules:
                for subject, obj in list(self.pairs(rule.role)):
                    if self.has_label(obj, rule.filler):
                        changed |= self.add_label(subject, rule.rhs)

            for element in self.elements:
                for rule in tbox.conjunction_rules:
                    if all(self.has_label(element, name) for name in rule.lhs):
                        changed |= self.add_label(element, rule.rhs)
                if self.inconsistent:
                    return False

        return not self.inconsistent

    def is_satisfied(self, element: str, rule: ExistsRightRule) -> bool:
        return any(
            subject == element and self.has_label(obj, rule.filler)
            for subject, obj in self.pairs(rule.role)
        )

    def open_requirements(self, element: str) -> list[ExistsRightRule]:
        return [
            rule
            for rule in self.tbox.exists_right_rules
            if self.has_label(element, rule.lhs) and not self.is_satisfied(element, rule)
        ]

    def facts(self) -> list[tuple[str, tuple[str, ...]]]:
        result = [
            (name, (element,))
            for element in self.elements
            for name in sorted(self.labels.get(element, ()))
            if name != TOP
        ]
        for role_name in sorted(self.edges):
            result.extend((role_name, pair) for pair in sorted(self.edges[role_name]))
        return result


def chase(abox: ABox, tbox: NormalizedTBox, depth_limit: int) -> CanonicalStructure:
    state = Saturation.from_abox(abox, tbox)
    individuals = frozenset(state.elements)
    depth = {element: 0 for element in state.elements}
    parent: dict[str, str] = {}
    counter = 0

    while state.propagate():
        created = []
        for element in list(state.elements):
            if depth[element] >= depth_limit:
                continue
            for rule in state.open_requirements(element):
                # an earlier null of this round may already satisfy the rule
                if state.is_satisfied(element, rule):
                    continue
                counter += 1
                null = f"{NULL_PREFIX}{counter}"
                state.elements.append(null)
                depth[null] = depth[element] + 1
                parent[null] = element
                state.add_edge(rule.role, element, null)
                state.add_label(null, rule.filler)
                created.append(null)
        if not created:
            break

    saturated = state.inconsistent or not any(
        state.open_requirements(element) for element in state.elements
    )
    structure = CanonicalStructure(
        individuals=individuals,
        elements=list(state.elements),
        depth=depth,
        parent=parent,
        labels={element: set(state.labels.get(element, ())) for element in state.elements},
        edges={name: set(pairs) for name, pairs in state.edges.items() if pairs},
        depth_limit=depth_limit,
        saturated=saturated,
        inconsistent=state.inconsistent,
        fresh_names=frozenset(tbox.fresh_names),
    )
    logger.debug(
        f"Chase: {len(individuals)} individuals, {counter} nulls, "
        f"saturated={saturated}, inconsistent={state.inconsistent}"
    )
    return structure


def structure_from_abox(abox: ABox) -> CanonicalStructure:
    """The ABox itself, for TBoxes without rules."""
    state = Saturation.from_abox(abox, NormalizedTBox())
    return CanonicalStructure(
        individuals=frozenset(state.elements),
        elements=list(state.elements),
        depth={element: 0 for element in state.elements},
        parent={},
        labels={element: set(state.labels.get(element, ())) for element in state.elements},
        edges={name: set(pairs) for name, pairs in state.edges.items()},
        depth_limit=0,
        saturated=True,
        inconsistent=False,
    )


def reachable(edges: set[tuple[str, str]], source: str, target: str) -> bool:
    if source == target:
        return True
    successors: dict[str, list[str]] = defaultdict(list)
    for subject, obj in edges:
        successors[subject].append(obj)
    seen = {source}
    frontier = [source]
    while frontier:
        current = frontier.pop()
        for nxt in successors.get(current, ()):
            if nxt == target:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False
