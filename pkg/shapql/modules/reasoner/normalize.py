"""
Structural transformation of ELHI⊥ / DL-Lite TBoxes into normal form.

Complex subconcepts are replaced by fresh names. On the left a fresh X
stands for C with C ⊑ X, on the right for D with X ⊑ D, so the result is a
conservative extension of the input.
"""

import logging
from collections.abc import Iterable

from shapql.modules.kb.models import (
    And,
    Axiom,
    Bot,
    Concept,
    ConceptName,
    Exists,
    Not,
    RoleInclusion,
    Top,
)
from shapql.modules.reasoner.models import (
    BOTTOM,
    TOP,
    ConjunctionRule,
    ExistsLeftRule,
    ExistsRightRule,
    NormalizedTBox,
    RoleClashRule,
    RoleRule,
)

logger = logging.getLogger(__name__)

FRESH_PREFIX = "_N"


class _Normalizer:
    def __init__(self):
        self.conjunction: set[ConjunctionRule] = set()
        self.exists_left: set[ExistsLeftRule] = set()
        self.exists_right: set[ExistsRightRule] = set()
        self.roles: set[RoleRule] = set()
        self.clashes: set[RoleClashRule] = set()
        self.fresh: dict[str, str] = {}
        self._lhs_names: dict[Concept, str] = {}
        self._rhs_names: dict[Concept, str] = {}

    def _new_name(self, source: Concept) -> str:
        name = f"{FRESH_PREFIX}{len(self.fresh) + 1}"
        self.fresh[name] = str(source)
        return name

    # ── left-hand sides: C ⊑ target ──────────────────────────────

    def lhs_atom(self, concept: Concept) -> str:
        if isinstance(concept, ConceptName):
            return concept.name
        if isinstance(concept, Top):
            return TOP
        if concept not in self._lhs_names:
            name = self._new_name(concept)
            self._lhs_names[concept] = name
            self.lhs_into(concept, name)
        return self._lhs_names[concept]

    def lhs_into(self, concept: Concept, target: str) -> None:
        if isinstance(concept, (ConceptName, Top)):
            source = self.lhs_atom(concept)
            if source != target:
                self.conjunction.add(ConjunctionRule((source,), target))
            return

        if isinstance(concept, And):
            atoms = sorted({self.lhs_atom(c) for c in concept.conjuncts()})
            while len(atoms) > 2:
                first, second, *rest = atoms
                folded = self._new_name(And(ConceptName(first), ConceptName(second)))
                self.conjunction.add(ConjunctionRule((first, second), folded))
                atoms = sorted([folded, *rest])
            self.conjunction.add(ConjunctionRule(tuple(atoms), target))
            return

        if isinstance(concept, Exists):
            self.exists_left.add(
                ExistsLeftRule(concept.role, self.lhs_atom(concept.filler), target)
            )
            return

        # bot on the left: the inclusion holds trivially
        if isinstance(concept, Bot):
            return

        raise ValueError(f"Unsupported left-hand side {concept}")

    # ── right-hand sides: source ⊑ D ─────────────────────────────

    def rhs_atom(self, concept: Concept) -> str:
        if isinstance(concept, ConceptName):
            return concept.name
        if isinstance(concept, Top):
            return TOP
        if concept not in self._rhs_names:
            name = self._new_name(concept)
            self._rhs_names[concept] = name
            self.derive(name, concept)
        return self._rhs_names[concept]

    def derive(self, source: str, concept: Concept) -> None:
        if isinstance(concept, Top):
            return
        if isinstance(concept, ConceptName):
            if concept.name != source:
                self.conjunction.add(ConjunctionRule((source,), concept.name))
            return
        if isinstance(concept, Bot):
            self.conjunction.add(ConjunctionRule((source,), BOTTOM))
            return
        if isinstance(concept, And):
            for part in concept.conjuncts():
                self.derive(source, part)
            return
        if isinstance(concept, Exists):
            self.exists_right.add(
                ExistsRightRule(source, concept.role, self.rhs_atom(concept.filler))
            )
            return
        if isinstance(concept, Not):
            negated = self.lhs_atom(concept.operand)
            lhs = tuple(sorted({source, negated}))
            self.conjunction.add(ConjunctionRule(lhs, BOTTOM))
            return

        raise ValueError(f"Unsupported right-hand side {concept}")

    # ── axioms ───────────────────────────────────────────────────

    def add(self, axiom: Axiom) -> None:
        if isinstance(axiom, RoleInclusion):
            if axiom.negated:
                self.clashes.add(RoleClashRule(axiom.lhs, axiom.rhs))
            elif axiom.lhs != axiom.rhs:
                self.roles.add(RoleRule(axiom.lhs, axiom.rhs))
            return

        if isinstance(axiom.rhs, (ConceptName, Bot)):
            target = axiom.rhs.name if isinstance(axiom.rhs, ConceptName) else BOTTOM
            self.lhs_into(axiom.lhs, target)
            return

        self.derive(self.lhs_atom(axiom.lhs), axiom.rhs)

    def result(self, axioms: list[Axiom]) -> NormalizedTBox:
        names = set(self.fresh)
        for axiom in axioms:
            names |= axiom.concept_names()
        return NormalizedTBox(
            conjunction_rules=tuple(sorted(self.conjunction)),
            exists_left_rules=tuple(sorted(self.exists_left)),
            exists_right_rules=tuple(sorted(self.exists_right)),
            role_rules=tuple(sorted(self.roles)),
            role_clash_rules=tuple(sorted(self.clashes)),
            fresh=tuple(sorted(self.fresh.items())),
            concept_names=frozenset(names),
        )


def normalize_tbox(tbox: Iterable[Axiom]) -> NormalizedTBox:
    axioms = sorted(tbox, key=str)
    normalizer = _Normalizer()
    for axiom in axioms:
        normalizer.add(axiom)

    normalized = normalizer.result(axioms)
    logger.debug(
        f"Normalized {len(axioms)} axioms into {normalized.rule_count()} rules "
        f"({len(normalized.fresh)} fresh names)"
    )
    return normalized
