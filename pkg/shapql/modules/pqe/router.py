import click

from shapql.core.enums import Regime, get_enum_values
from shapql.core.exceptions import ValidationError
from shapql.core.output import OutputRecord
from shapql.dependencies.inputs import load_kb, load_query
from shapql.dependencies.options import (
    chase_depth_option,
    finish,
    output_options,
    stopwatch,
    threads_option,
)
from shapql.modules.kb.models import Ucq
from shapql.modules.pqe.models import ProbabilisticABox
from shapql.modules.pqe.service import (
    DEFAULT_BOTTOM_NAME,
    pqe_exact,
    qstar_probability_identity,
    regime_flags,
    require_regime,
)
from shapql.modules.reasoner.service import Reasoner


@click.command("pqe")
@click.option("--kb", "kb_path", required=True, help="Knowledge base with '@ p/q' annotations.")
@click.option("--query", "query_path", required=True, help="Query file.")
@click.option(
    "--regime",
    type=click.Choice(get_enum_values(Regime)),
    default=Regime.ANY.value,
    show_default=True,
)
@click.option("--qstar", is_flag=True, help="Also check the Pr(Q*) identity.")
@click.option("--bottom-name", default=DEFAULT_BOTTOM_NAME, show_default=True)
@chase_depth_option
@threads_option
@output_options
def pqe_command(
    kb_path, query_path, regime, qstar, bottom_name, chase_depth, threads,
    table, decimal, timing,
):
    """Probability that the query holds in a tuple-independent ABox."""
    document = load_kb(kb_path)
    query = load_query(query_path)
    d = ProbabilisticABox(
        {a: document.probability_of(a) for a in document.full_abox().sorted()}
    )
    require_regime(d, Regime(regime))
    reasoner = Reasoner(depth_limit=chase_depth)

    with stopwatch() as watch:
        values = {
            "probability": pqe_exact(
                d, document.full_tbox(), query, reasoner=reasoner, threads=threads
            )
        }
        extra: dict = {"regimes": regime_flags(d)}
        if qstar:
            if not isinstance(query, Ucq):
                raise ValidationError("--qstar needs a UCQ", field="query")
            identity = qstar_probability_identity(
                d, document.full_tbox(), query,
                bottom_name=bottom_name, reasoner=reasoner, threads=threads,
            )
            values.update(
                pr_bottom=identity.pr_bottom,
                pr_qstar=identity.pr_qstar,
                minus_form=identity.minus_form,
                plus_form=identity.plus_form,
            )
            extra.update(minus_holds=identity.minus_holds, plus_holds=identity.plus_holds)

    record = OutputRecord.from_values(
        "pqe", values, decimal=decimal, stats=reasoner.cache_info(), extra=extra
    )
    finish(record, table=table, timing=timing, watch=watch)
