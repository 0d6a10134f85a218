import logging
from fractions import Fraction

import click

from shapql.core.enums import Method, MethodTag, get_enum_values
from shapql.core.exceptions import ValidationError
from shapql.core.output import OutputRecord
from shapql.core.validators import format_rational
from shapql.dependencies.inputs import load_kb, load_query, resolve_player
from shapql.dependencies.options import (
    chase_depth_option,
    finish,
    output_options,
    stopwatch,
    threads_option,
)
from shapql.modules.games.service import game_from_kb
from shapql.modules.kb.models import ConceptAssertion, Ucq
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.shapley.dllite import dllite_atomic_shapley
from shapql.modules.shapley.sampling import sample_additive, sample_multiplicative
from shapql.modules.shapley.service import (
    shapley_all,
    shapley_exact_permutation,
    shapley_exact_subset,
    shapley_via_supports,
)
from shapql.modules.supports.service import enumerate_supports

logger = logging.getLogger(__name__)

_EXACT_TAGS = {
    Method.EXACT: MethodTag.SUBSET,
    Method.PERMUTATION: MethodTag.PERMUTATION,
    Method.SUPPORTS: MethodTag.SUPPORTS,
}


def _goal_assertion(query) -> ConceptAssertion:
    if isinstance(query, Ucq) and len(query.disjuncts) == 1:
        (cq,) = query.disjuncts
        if len(cq) == 1:
            (atom,) = cq.atoms
            if len(atom.terms) == 1 and isinstance(atom.terms[0], str):
                return ConceptAssertion(atom.predicate, atom.terms[0])
    raise ValidationError(
        "The dllite method needs a single ground atom A(c) as query", field="query"
    )


@click.command("shapley")
@click.option("--kb", "kb_path", required=True, help="Knowledge base (.kbq).")
@click.option("--query", "query_path", required=True, help="Query file.")
@click.option(
    "--method",
    type=click.Choice(get_enum_values(Method)),
    default=Method.EXACT.value,
    show_default=True,
)
@click.option("--player", default=None, help="Single endogenous element, e.g. 'r(a,b)'.")
@click.option("--eps", default=None, help="Sampling accuracy p/q.")
@click.option("--delta", default=None, help="Sampling failure probability p/q.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--multiplicative",
    is_flag=True,
    help="Relevance check first, then sample at eps / n^k.",
)
@chase_depth_option
@threads_option
@output_options
def shapley_command(
    kb_path, query_path, method, player, eps, delta, seed, multiplicative,
    chase_depth, threads, table, decimal, timing,
):
    """Shapley values of the endogenous elements for a Boolean query."""
    document = load_kb(kb_path)
    query = load_query(query_path)
    pk = document.to_partitioned_kb()
    reasoner = Reasoner(depth_limit=chase_depth)
    chosen = Method(method)

    with stopwatch() as watch:
        game = game_from_kb(pk, query, reasoner=reasoner, name=kb_path)
        targets = [resolve_player(game.players, player)] if player else list(game.players)
        extra = {}
        record_options = {}

        if chosen == Method.SAMPLE:
            if eps is None or delta is None:
                raise ValidationError("Sampling needs --eps and --delta", field="eps/delta")
            supports = enumerate_supports(game, threads=threads) if multiplicative else None
            values = {}
            estimate = None
            for target in targets:
                if multiplicative:
                    estimate = sample_multiplicative(
                        game, target, eps, delta, None, seed, supports=supports, threads=threads
                    )
                else:
                    estimate = sample_additive(game, target, eps, delta, seed, threads=threads)
                values[target] = estimate.value
            record_options = {"method": chosen.value, "seed": seed}
            if estimate is not None:
                record_options.update(method=estimate.method.value, samples=estimate.samples)
                extra["effective_epsilon"] = format_rational(estimate.effective_epsilon)
        elif chosen == Method.DLLITE:
            result = dllite_atomic_shapley(pk, _goal_assertion(query), reasoner=reasoner)
            values = {t: result.value_of(t) for t in targets}
            record_options = {"method": result.method.value}
        elif player:
            (target,) = targets
            if chosen == Method.PERMUTATION:
                value = shapley_exact_permutation(game, target)
            elif chosen == Method.SUPPORTS:
                value = shapley_via_supports(
                    enumerate_supports(game, threads=threads), game.n, target
                )
            else:
                value = shapley_exact_subset(game, target, threads=threads)
            values = {target: value}
            record_options = {"method": _EXACT_TAGS[chosen].value}
        else:
            result = shapley_all(game, chosen, threads=threads)
            values = dict(zip(result.players, result.values))
            record_options = {"method": result.method.value}

    record = OutputRecord.from_values(
        "shapley",
        {str(p): Fraction(v) for p, v in values.items()},
        decimal=decimal,
        stats=game.stats(),
        extra=extra,
        **record_options,
    )
    finish(record, table=table, timing=timing, watch=watch)
