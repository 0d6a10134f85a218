"""
Closed form for atomic goals over DL-Lite with a purely exogenous TBox.

On a consistent DL-Lite KB, A(c) is entailed iff a single fact entails it.
With m such witness facts among n endogenous ones, a witness is pivotal
exactly when it arrives first among the witnesses.
"""

import logging
from fractions import Fraction
from math import comb

from shapql.core.enums import Consistency, Dialect, MethodTag
from shapql.core.exceptions import DialectError, UnsupportedInstanceError
from shapql.modules.kb.models import (
    ABox,
    Atom,
    ConceptAssertion,
    CQ,
    PartitionedKB,
    Ucq,
)
from shapql.modules.reasoner.service import Reasoner, default_reasoner
from shapql.modules.shapley.schemas import ShapleyResult
from shapql.modules.shapley.service import shapley_coefficient

logger = logging.getLogger(__name__)


def goal_query(goal: ConceptAssertion) -> Ucq:
    return Ucq((CQ(frozenset({Atom(goal.concept, (goal.individual,))})),))


def witness_value(n: int, m: int) -> Fraction:
    """Σ_{k=0}^{n-m} C(n-m,k)·k!(n-k-1)!/n!, which equals 1/m."""
    return sum(
        (comb(n - m, k) * shapley_coefficient(n, k) for k in range(n - m + 1)),
        Fraction(0),
    )


def dllite_atomic_shapley(
    pk: PartitionedKB,
    goal: ConceptAssertion,
    *,
    reasoner: Reasoner | None = None,
) -> ShapleyResult:
    oracle = reasoner or default_reasoner
    if pk.dialect != Dialect.DL_LITE:
        raise DialectError("The closed form needs a dl-lite knowledge base")
    if pk.tbox_endo:
        raise UnsupportedInstanceError(
            "The closed form needs a purely exogenous TBox",
            details={"endogenous_axioms": sorted(str(a) for a in pk.tbox_endo)},
        )

    tbox = pk.full_tbox()
    if oracle.is_consistent(pk.full_abox(), tbox) != Consistency.CONSISTENT:
        raise UnsupportedInstanceError(
            "Negative inclusions are triggered by the ABox; use the exact engine",
            details={"goal": str(goal)},
        )

    query = goal_query(goal)

    def is_witness(assertion) -> bool:
        return oracle.entails_strict(ABox(frozenset({assertion})), tbox, query)

    players = pk.abox_endo.sorted()
    n = len(players)
    if any(is_witness(a) for a in pk.abox_exo.sorted()):
        logger.info(f"{goal} already follows from an exogenous fact")
        return ShapleyResult(
            players=tuple(players),
            values=tuple(Fraction(0) for _ in players),
            method=MethodTag.DLLITE_CLOSED_FORM,
        )

    witnesses = [is_witness(a) for a in players]
    m = sum(witnesses)
    share = witness_value(n, m) if m else Fraction(0)
    logger.info(f"{m} of {n} endogenous facts entail {goal} on their own")
    return ShapleyResult(
        players=tuple(players),
        values=tuple(share if w else Fraction(0) for w in witnesses),
        method=MethodTag.DLLITE_CLOSED_FORM,
    )
