"""
Structural operations on knowledge bases.

  1. normalize role assertions to forward form
  2. split ABoxes (and CQs) into connected components
  3. backtracking homomorphism search shared by ABox-to-ABox matching and
     CQ evaluation over canonical structures
  4. dialect checks for axioms
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Sequence
from typing import Any

import networkx as nx

from shapql.core.enums import Dialect
from shapql.core.exceptions import DialectError, ValidationError
from shapql.modules.kb.models import (
    ABox,
    And,
    Assertion,
    Axiom,
    Bot,
    Concept,
    ConceptAssertion,
    ConceptName,
    Exists,
    Not,
    RoleAssertion,
    RoleInclusion,
    Top,
)

logger = logging.getLogger(__name__)

Fact = tuple[str, tuple]


def normalize_assertion(assertion: Assertion) -> Assertion:
    """``inv(r)(a,b)`` becomes ``r(b,a)``; everything else is unchanged."""
    return assertion.normalized()


# ── connected components ─────────────────────────────────────────


def group_by_shared_terms(items: Sequence[tuple[Any, tuple[str, ...]]]) -> list[list]:
    """Group items whose term tuples are linked through shared terms.

    Groups come out sorted by their smallest term; items keep input order.
    """
    graph = nx.Graph()
    for _, terms in items:
        graph.add_nodes_from(terms)
        for left, right in zip(terms, terms[1:]):
            graph.add_edge(left, right)

    component_of: dict[str, int] = {}
    components = sorted(
        (sorted(component) for component in nx.connected_components(graph)),
        key=lambda names: names[0],
    )
    for index, names in enumerate(components):
        for name in names:
            component_of[name] = index

    groups: list[list] = [[] for _ in components]
    for item, terms in items:
        groups[component_of[terms[0]]].append(item)
    return [group for group in groups if group]


def connected_components(abox: ABox) -> list[ABox]:
    items = [(a, a.individuals()) for a in abox.sorted()]
    return [ABox(frozenset(group)) for group in group_by_shared_terms(items)]


def is_connected(abox: ABox) -> bool:
    return len(connected_components(abox)) <= 1


# ── homomorphism search ──────────────────────────────────────────


class FactIndex:
    """Facts grouped by predicate and by (predicate, position, value), sorted."""

    def __init__(self, facts: Iterable[Fact]):
        self._by_predicate: dict[str, list[tuple]] = defaultdict(list)
        self._by_position: dict[tuple[str, int, Hashable], list[tuple]] = defaultdict(
            list
        )

        for predicate, args in sorted(set(facts), key=lambda f: (f[0], tuple(map(str, f[1])))):
            self._by_predicate[predicate].append(args)
            for position, value in enumerate(args):
                self._by_position[(predicate, position, value)].append(args)

    def candidates(self, predicate: str, bound: dict[int, Hashable]) -> list[tuple]:
        if not bound:
            return self._by_predicate.get(predicate, [])
        position, value = min(
            bound.items(),
            key=lambda item: len(self._by_position.get((predicate, item[0], item[1]), ())),
        )
        return self._by_position.get((predicate, position, value), [])

    def __contains__(self, fact: Fact) -> bool:
        predicate, args = fact
        if not args:
            return predicate in self._by_predicate
        return args in self._by_position.get((predicate, 0, args[0]), ())


def match_atoms(
    atoms: Sequence[Fact],
    index: FactIndex,
    is_variable: Callable[[Hashable], bool],
    initial: dict | None = None,
) -> dict | None:
    """First assignment (in sorted candidate order) mapping every atom into the index."""
    assignment: dict = dict(initial or {})
    remaining = list(atoms)

    def bound_positions(atom: Fact) -> dict[int, Hashable]:
        _, terms = atom
        bound = {}
        for position, term in enumerate(terms):
            if not is_variable(term):
                bound[position] = term
            elif term in assignment:
                bound[position] = assignment[term]
        return bound

    def search() -> bool:
        if not remaining:
            return True

        best = max(
            range(len(remaining)),
            key=lambda i: (len(bound_positions(remaining[i])), -i),
        )
        atom = remaining.pop(best)
        predicate, terms = atom

        for args in index.candidates(predicate, bound_positions(atom)):
            if len(args) != len(terms):
                continue
            added = []
            ok = True
            for term, value in zip(terms, args):
                if not is_variable(term):
                    if term != value:
                        ok = False
                        break
                elif term in assignment:
                    if assignment[term] != value:
                        ok = False
                        break
                else:
                    assignment[term] = value
                    added.append(term)
            if ok and search():
                return True
            for term in added:
                del assignment[term]

        remaining.insert(best, atom)
        return False

    if search():
        return assignment
    return None


def find_c_homomorphism(
    source: ABox, target: ABox, fixed: Iterable[str] = ()
) -> dict[str, str] | None:
    """Map individuals(source) into individuals(target), fixing ``fixed`` pointwise."""
    pinned = frozenset(fixed)
    initial = {c: c for c in pinned if c in source.individuals()}
    for c in initial:
        if c not in target.individuals():
            return None

    result = match_atoms(
        source.facts(),
        FactIndex(target.facts()),
        is_variable=lambda term: term not in pinned,
        initial=initial,
    )
    return result


def apply_homomorphism(abox: ABox, mapping: dict[str, str]) -> ABox:
    missing = sorted(abox.individuals() - mapping.keys())
    if missing:
        raise ValidationError(
            "Homomorphism is not defined on every individual",
            field="mapping",
            errors=missing,
        )
    return ABox(frozenset(a.rename(mapping) for a in abox.assertions))


# ── dialect checks ───────────────────────────────────────────────


def _is_basic(concept: Concept) -> bool:
    return isinstance(concept, ConceptName) or (
        isinstance(concept, Exists) and isinstance(concept.filler, Top)
    )


def check_axiom_dialect(axiom: Axiom, dialect: Dialect) -> None:
    if dialect == Dialect.ELHI_BOT:
        if isinstance(axiom, RoleInclusion):
            if axiom.negated:
                raise DialectError(
                    "Negated role inclusions are DL-Lite only", axiom=str(axiom)
                )
            return
        if axiom.lhs.mentions(Not) or axiom.rhs.mentions(Not):
            raise DialectError("Negation is not allowed in elhi-bot", axiom=str(axiom))
        if axiom.lhs.mentions(Bot):
            raise DialectError("bot may only occur on the right", axiom=str(axiom))
        return

    if isinstance(axiom, RoleInclusion):
        return
    if not _is_basic(axiom.lhs):
        raise DialectError(
            "DL-Lite left-hand sides must be A or exists R.top", axiom=str(axiom)
        )
    rhs = axiom.rhs.operand if isinstance(axiom.rhs, Not) else axiom.rhs
    if not _is_basic(rhs):
        raise DialectError(
            "DL-Lite right-hand sides must be B or not B", axiom=str(axiom)
        )


def check_tbox_dialect(tbox: Iterable[Axiom], dialect: Dialect) -> None:
    for axiom in sorted(tbox, key=str):
        check_axiom_dialect(axiom, dialect)


def tbox_concept_names(tbox: Iterable[Axiom]) -> frozenset[str]:
    return frozenset(name for axiom in tbox for name in axiom.concept_names())


def tbox_role_names(tbox: Iterable[Axiom]) -> frozenset[str]:
    return frozenset(name for axiom in tbox for name in axiom.role_names())


def concept_to_tree(concept: Concept, root: str, fresh: Callable[[], str]) -> tuple[list[Assertion], bool]:
    """Materialize a concept as a tree-shaped ABox rooted at ``root``.

    Returns the assertions and whether the concept is unsatisfiable by
    construction (it mentions bot).
    """
    assertions: list[Assertion] = []
    clash = False

    def build(current: Concept, node: str) -> None:
        nonlocal clash
        if isinstance(current, Top):
            return
        if isinstance(current, Bot):
            clash = True
            return
        if isinstance(current, ConceptName):
            assertions.append(ConceptAssertion(current.name, node))
            return
        if isinstance(current, And):
            build(current.left, node)
            build(current.right, node)
            return
        if isinstance(current, Exists):
            child = fresh()
            assertions.append(RoleAssertion(current.role, node, child).normalized())
            build(current.filler, child)
            return
        raise DialectError("Negated concepts cannot be materialized", axiom=str(current))

    build(concept, root)
    return assertions, clash
