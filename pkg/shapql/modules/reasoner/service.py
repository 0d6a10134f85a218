"""
Entailment oracle.

``Reasoner`` wraps normalization and the chase behind a bounded, lock-guarded
memo keyed by (ABox, TBox, query, resolved chase depth). A verdict never
depends on whether it came from the memo, so one instance can be shared by
every worker thread.
"""

from __future__ import annotations

import logging
import threading
from collections import OrderedDict
from collections.abc import Iterable
from functools import lru_cache
from itertools import count

from shapql.core.config import settings
from shapql.core.enums import Consistency, Verdict
from shapql.core.exceptions import OracleUnknownError
from shapql.core.output import OracleStats
from shapql.modules.kb.models import (
    ABox,
    And,
    Atom,
    Axiom,
    AxiomGoal,
    Bot,
    BooleanQuery,
    ConceptAssertion,
    CQ,
    Not,
    Reach,
    Top,
    Ucq,
    Variable,
)
from shapql.modules.kb.service import FactIndex, concept_to_tree, match_atoms
from shapql.modules.reasoner.chase import chase, reachable, structure_from_abox
from shapql.modules.reasoner.countermodel import FiniteModel, find_countermodel
from shapql.modules.reasoner.models import CanonicalStructure, NormalizedTBox
from shapql.modules.reasoner.normalize import normalize_tbox

logger = logging.getLogger(__name__)

GOAL_INDIVIDUAL = "_:c0"


@lru_cache(maxsize=1024)
def _normalized(tbox: frozenset) -> NormalizedTBox:
    return normalize_tbox(tbox)


def _is_variable(term) -> bool:
    return isinstance(term, Variable)


def _query_size(query: BooleanQuery) -> int:
    if isinstance(query, Ucq):
        return query.atom_count()
    if isinstance(query, AxiomGoal):
        rhs = query.axiom.rhs
        if isinstance(rhs, Not):
            rhs = rhs.operand
        tree, _ = concept_to_tree(rhs, GOAL_INDIVIDUAL, _fresh_names("_:v"))
        return len(tree)
    return 0


def _fresh_names(prefix: str):
    counter = count(1)
    return lambda: f"{prefix}{next(counter)}"


def _tree_query(concept, root: str) -> Ucq:
    """The concept as a tree-shaped CQ whose root is the constant ``root``."""
    tree, _ = concept_to_tree(concept, "_:root", _fresh_names("_:v"))

    def term(node: str):
        return root if node == "_:root" else Variable(node[2:])

    atoms = set()
    for assertion in tree:
        if isinstance(assertion, ConceptAssertion):
            atoms.add(Atom(assertion.concept, (term(assertion.individual),)))
        else:
            forward = assertion.normalized()
            atoms.add(
                Atom(forward.role.name, (term(forward.subject), term(forward.object)))
            )
    return Ucq((CQ(frozenset(atoms)),))


class Reasoner:
    """Three-valued consistency and entailment with a shared verdict memo."""

    def __init__(self, depth_limit: int | None = None, memo_size: int | None = None):
        self.depth_limit = depth_limit
        self.memo_size = settings.MEMO_SIZE if memo_size is None else memo_size
        self._memo: OrderedDict[tuple, Verdict] = OrderedDict()
        self._lock = threading.Lock()
        self._calls = 0
        self._hits = 0

    # ── bookkeeping ──────────────────────────────────────────────

    def cache_info(self) -> OracleStats:
        with self._lock:
            return OracleStats(entailment_calls=self._calls, memo_hits=self._hits)

    def cache_clear(self) -> None:
        with self._lock:
            self._memo.clear()
            self._calls = 0
            self._hits = 0

    def normalize(self, tbox: Iterable[Axiom]) -> NormalizedTBox:
        return _normalized(frozenset(tbox))

    def default_depth(self, query: BooleanQuery | None, normalized: NormalizedTBox) -> int:
        if self.depth_limit is not None:
            return self.depth_limit
        if settings.CHASE_DEPTH is not None:
            return settings.CHASE_DEPTH
        size = _query_size(query) if query is not None else 0
        return size + len(normalized.concept_names)

    def chase(
        self, abox: ABox, tbox: Iterable[Axiom], depth_limit: int | None = None
    ) -> CanonicalStructure:
        normalized = self.normalize(tbox)
        if normalized.is_empty():
            return structure_from_abox(abox)
        depth = depth_limit if depth_limit is not None else self.default_depth(None, normalized)
        return chase(abox, normalized, depth)

    # ── consistency ──────────────────────────────────────────────

    def is_consistent(
        self, abox: ABox, tbox: Iterable[Axiom], depth_limit: int | None = None
    ) -> Consistency:
        normalized = self.normalize(tbox)
        if not normalized.can_clash():
            return Consistency.CONSISTENT

        depth = depth_limit if depth_limit is not None else self.default_depth(None, normalized)
        structure = chase(abox, normalized, depth)
        if structure.inconsistent:
            return Consistency.INCONSISTENT
        if structure.saturated:
            return Consistency.CONSISTENT
        logger.warning(f"Consistency undecided at chase depth {depth}")
        return Consistency.UNKNOWN

    # ── entailment ───────────────────────────────────────────────

    def entails(
        self,
        abox: ABox,
        tbox: Iterable[Axiom],
        query: BooleanQuery,
        depth_limit: int | None = None,
    ) -> Verdict:
        axioms = frozenset(tbox)
        if depth_limit is None:
            depth = self.default_depth(query, self.normalize(axioms))
        else:
            depth = depth_limit
        # axiom goals resolve nested depths themselves when no limit is given
        key = (abox.assertions, axioms, query, depth, depth_limit is None)

        with self._lock:
            self._calls += 1
            cached = self._memo.get(key)
            if cached is not None:
                self._hits += 1
                self._memo.move_to_end(key)
                return cached

        verdict = self._entails(abox, axioms, query, depth_limit)

        with self._lock:
            self._memo[key] = verdict
            if len(self._memo) > self.memo_size:
                self._memo.popitem(last=False)
        return verdict

    def entails_strict(
        self,
        abox: ABox,
        tbox: Iterable[Axiom],
        query: BooleanQuery,
        depth_limit: int | None = None,
    ) -> bool:
        """Two-valued entailment; an undecided verdict becomes OracleUnknownError."""
        verdict = self.entails(abox, tbox, query, depth_limit)
        if verdict == Verdict.UNKNOWN:
            normalized = self.normalize(tbox)
            depth = depth_limit if depth_limit is not None else self.default_depth(query, normalized)
            raise OracleUnknownError(
                f"Entailment of {query} undecided at chase depth {depth}; "
                f"raise --chase-depth",
                depth_limit=depth,
            )
        return verdict == Verdict.YES

    def _entails(
        self,
        abox: ABox,
        tbox: frozenset,
        query: BooleanQuery,
        depth_limit: int | None,
    ) -> Verdict:
        normalized = self.normalize(tbox)
        depth = depth_limit if depth_limit is not None else self.default_depth(query, normalized)

        if isinstance(query, AxiomGoal):
            return self._entails_axiom(abox, tbox, query, depth_limit)

        if normalized.is_empty():
            structure = structure_from_abox(abox)
        else:
            structure = chase(abox, normalized, depth)
        if structure.inconsistent:
            return Verdict.YES

        if isinstance(query, Reach):
            edges = {
                pair
                for pair in structure.edges.get(query.role, set())
                if pair[0] in structure.individuals and pair[1] in structure.individuals
            }
            if query.source == query.target or reachable(edges, query.source, query.target):
                return Verdict.YES
            if normalized.can_clash() and not structure.saturated:
                return Verdict.UNKNOWN
            return Verdict.NO

        if self._matches(structure, query):
            return Verdict.YES
        if not structure.saturated:
            logger.warning(f"Chase cutoff at depth {depth} left {query} undecided")
            return Verdict.UNKNOWN
        return Verdict.NO

    @staticmethod
    def _matches(structure: CanonicalStructure, query: Ucq) -> bool:
        index = FactIndex(structure.facts())
        for cq in query.disjuncts:
            atoms = [(atom.predicate, atom.terms) for atom in cq.sorted_atoms()]
            if match_atoms(atoms, index, _is_variable) is not None:
                return True
        return False

    def _entails_axiom(
        self, abox: ABox, tbox: frozenset, query: AxiomGoal, depth_limit: int | None
    ) -> Verdict:
        background = Consistency.CONSISTENT
        if len(abox):
            background = self.is_consistent(abox, tbox, depth_limit)
            if background == Consistency.INCONSISTENT:
                return Verdict.YES

        lhs, rhs = query.axiom.lhs, query.axiom.rhs
        if isinstance(rhs, Top):
            return Verdict.YES

        # C ⊑ ¬B holds iff C ⊓ B is unsatisfiable
        seed_concept = And(lhs, rhs.operand) if isinstance(rhs, Not) else lhs
        seed, clash = concept_to_tree(seed_concept, GOAL_INDIVIDUAL, _fresh_names("_:c"))
        if clash:
            return Verdict.YES
        seed_abox = ABox(frozenset(seed))

        # without negation on the right, any bot makes the whole rhs empty
        if isinstance(rhs, Not) or rhs.mentions(Bot):
            verdict = {
                Consistency.INCONSISTENT: Verdict.YES,
                Consistency.CONSISTENT: Verdict.NO,
                Consistency.UNKNOWN: Verdict.UNKNOWN,
            }[self.is_consistent(seed_abox, tbox, depth_limit)]
        else:
            verdict = self._entails(
                seed_abox, tbox, _tree_query(rhs, GOAL_INDIVIDUAL), depth_limit
            )

        if verdict == Verdict.NO and background == Consistency.UNKNOWN:
            return Verdict.UNKNOWN
        return verdict


default_reasoner = Reasoner()


def is_consistent(
    abox: ABox, tbox: Iterable[Axiom], depth_limit: int | None = None
) -> Consistency:
    return default_reasoner.is_consistent(abox, tbox, depth_limit)


def entails(
    abox: ABox,
    tbox: Iterable[Axiom],
    query: BooleanQuery,
    depth_limit: int | None = None,
) -> Verdict:
    return default_reasoner.entails(abox, tbox, query, depth_limit)


__all__ = [
    "FiniteModel",
    "Reasoner",
    "chase",
    "default_reasoner",
    "entails",
    "find_countermodel",
    "is_consistent",
    "normalize_tbox",
]
