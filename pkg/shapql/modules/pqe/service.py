"""
Probabilistic query evaluation by enumeration of possible worlds.

Worlds over the uncertain facts are visited in Gray-code order, so each step
flips one fact and the world weight is updated by a single ratio. Index
ranges of the Gray sequence are independent and can run on separate workers.
"""

import logging
from collections.abc import Iterable
from fractions import Fraction

from shapql.core.concurrency import chunk_ranges, parallel_map, resolve_threads
from shapql.core.config import settings
from shapql.core.enums import Dialect, Regime
from shapql.core.exceptions import (
    NameClashError,
    RegimeViolationError,
    SizeLimitError,
    ValidationError,
)
from shapql.core.validators import format_rational
from shapql.modules.kb.models import (
    ABox,
    And,
    Atom,
    Axiom,
    BooleanQuery,
    Bot,
    Concept,
    ConceptInclusion,
    ConceptName,
    CQ,
    Exists,
    Ucq,
    Variable,
)
from shapql.modules.kb.service import check_tbox_dialect, tbox_concept_names
from shapql.modules.pqe.models import ProbabilisticABox, QStarIdentity
from shapql.modules.reasoner.service import Reasoner, default_reasoner

logger = logging.getLogger(__name__)

DEFAULT_BOTTOM_NAME = "ABot"


def _gray(index: int) -> int:
    return index ^ (index >> 1)


def pqe_exact(
    d: ProbabilisticABox,
    tbox: Iterable[Axiom],
    query: BooleanQuery,
    *,
    reasoner: Reasoner | None = None,
    depth_limit: int | None = None,
    limit: int | None = None,
    threads: int | None = None,
) -> Fraction:
    oracle = reasoner or default_reasoner
    axioms = frozenset(tbox)
    certain = ABox(frozenset(d.certain()))
    uncertain = d.uncertain()
    bound = settings.PQE_UNCERTAIN_LIMIT if limit is None else limit
    if len(uncertain) > bound:
        raise SizeLimitError(
            f"{len(uncertain)} uncertain facts exceed the PQE limit of {bound}",
            limit=bound,
            actual=len(uncertain),
        )

    probs = [d.probabilities[a] for a in uncertain]
    workers = resolve_threads(threads)

    def run(chunk: range) -> Fraction:
        if not chunk:
            return Fraction(0)
        world = _gray(chunk.start)
        weight = Fraction(1)
        for i, p in enumerate(probs):
            weight *= p if world >> i & 1 else 1 - p

        total = Fraction(0)
        for step in chunk:
            if step != chunk.start:
                flipped = (_gray(step) ^ world).bit_length() - 1
                p = probs[flipped]
                world ^= 1 << flipped
                weight *= p / (1 - p) if world >> flipped & 1 else (1 - p) / p
            facts = frozenset(uncertain[i] for i in range(len(uncertain)) if world >> i & 1)
            if oracle.entails_strict(certain.union(facts), axioms, query, depth_limit):
                total += weight
        return total

    result = sum(
        parallel_map(run, chunk_ranges(1 << len(uncertain), workers), workers),
        Fraction(0),
    )
    logger.debug(
        f"PQE over {1 << len(uncertain)} worlds ({len(certain)} certain facts) = "
        f"{format_rational(result)}"
    )
    return result


# ── probability regimes ──────────────────────────────────────────


def validate_regime(d: ProbabilisticABox, regime: Regime) -> bool:
    image = d.image()
    half = Fraction(1, 2)
    if regime == Regime.HALF:
        return image <= {half}
    if regime == Regime.HALF_ONE:
        return image <= {half, Fraction(1)}
    if regime == Regime.SINGLE_PROPER:
        return len(image - {Fraction(1)}) <= 1
    return True


def regime_flags(d: ProbabilisticABox) -> dict[str, bool]:
    return {regime.value: validate_regime(d, regime) for regime in Regime}


def require_regime(d: ProbabilisticABox, regime: Regime) -> None:
    if not validate_regime(d, regime):
        raise RegimeViolationError(
            f"Probabilities violate the {regime.value} regime",
            regime=regime.value,
            image=sorted(format_rational(p) for p in d.image()),
        )


# ── the A_⊥ transformation ───────────────────────────────────────


def _replace_bot(concept: Concept, name: str) -> Concept:
    if isinstance(concept, Bot):
        return ConceptName(name)
    if isinstance(concept, And):
        return And(_replace_bot(concept.left, name), _replace_bot(concept.right, name))
    if isinstance(concept, Exists):
        return Exists(concept.role, _replace_bot(concept.filler, name))
    return concept


def bottom_query(name: str = DEFAULT_BOTTOM_NAME) -> CQ:
    return CQ(frozenset({Atom(name, (Variable("x"),))}))


def qstar_transform(
    tbox: Iterable[Axiom], query: Ucq, bottom_name: str = DEFAULT_BOTTOM_NAME
) -> tuple[frozenset, Ucq]:
    axioms = frozenset(tbox)
    check_tbox_dialect(axioms, Dialect.ELHI_BOT)
    if bottom_name in tbox_concept_names(axioms) | query.concept_names():
        raise NameClashError(
            f"{bottom_name} already occurs in the TBox or query", name=bottom_name
        )

    transformed = frozenset(
        ConceptInclusion(_replace_bot(a.lhs, bottom_name), _replace_bot(a.rhs, bottom_name))
        if isinstance(a, ConceptInclusion)
        else a
        for a in axioms
    )
    return transformed, Ucq(query.disjuncts + (bottom_query(bottom_name),))


def verify_qstar_equivalence(
    abox: ABox,
    tbox: Iterable[Axiom],
    query: Ucq,
    depth_limit: int | None = None,
    *,
    bottom_name: str = DEFAULT_BOTTOM_NAME,
    reasoner: Reasoner | None = None,
) -> bool:
    oracle = reasoner or default_reasoner
    if bottom_name in abox.concept_names():
        raise ValidationError(
            f"ABox mentions {bottom_name}", field="abox", errors=[bottom_name]
        )
    axioms = frozenset(tbox)
    tbox_star, query_star = qstar_transform(axioms, query, bottom_name)
    left = oracle.entails_strict(abox, axioms, query, depth_limit)
    right = oracle.entails_strict(abox, tbox_star, query_star, depth_limit)
    return left == right


def qstar_probability_identity(
    d: ProbabilisticABox,
    tbox: Iterable[Axiom],
    query: Ucq,
    *,
    bottom_name: str = DEFAULT_BOTTOM_NAME,
    reasoner: Reasoner | None = None,
    threads: int | None = None,
) -> QStarIdentity:
    """Pr(D ⊨ Q*) by brute force against Pr(∃A_⊥) ± (1 - Pr(∃A_⊥))·Pr(D ⊨ Q).

    ``d`` may carry facts over ``bottom_name`` directly.
    """
    axioms = frozenset(tbox)
    tbox_star, query_star = qstar_transform(axioms, query, bottom_name)
    options = {"reasoner": reasoner, "threads": threads}

    pr_bottom = pqe_exact(d, frozenset(), Ucq((bottom_query(bottom_name),)), **options)
    pr_query = pqe_exact(d, axioms, query, **options)
    pr_qstar = pqe_exact(d, tbox_star, query_star, **options)

    identity = QStarIdentity(
        pr_bottom=pr_bottom,
        pr_query=pr_query,
        pr_qstar=pr_qstar,
        minus_form=pr_bottom - (1 - pr_bottom) * pr_query,
        plus_form=pr_bottom + (1 - pr_bottom) * pr_query,
    )
    logger.info(
        f"Pr(Q*)={format_rational(pr_qstar)}, plus form holds: {identity.plus_holds}, "
        f"minus form holds: {identity.minus_holds}"
    )
    return identity


def bottom_closed_form(d: ProbabilisticABox, bottom_name: str = DEFAULT_BOTTOM_NAME) -> Fraction:
    """1 - Π(1 - π(A_⊥(c))) over the A_⊥ facts of ``d``."""
    product = Fraction(1)
    for assertion, probability in d.probabilities.items():
        if getattr(assertion, "concept", None) == bottom_name:
            product *= 1 - probability
    return 1 - product
