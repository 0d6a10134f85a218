import click

from shapql.core.output import OutputRecord
from shapql.dependencies.inputs import load_kb, load_query
from shapql.dependencies.options import chase_depth_option, finish, output_options, stopwatch
from shapql.modules.reasoner.service import Reasoner


@click.command("consistency")
@click.option("--kb", "kb_path", required=True, help="Knowledge base (.kbq).")
@chase_depth_option
@output_options
def consistency_command(kb_path, chase_depth, table, decimal, timing):
    """Consistency of the whole knowledge base."""
    document = load_kb(kb_path)
    reasoner = Reasoner(depth_limit=chase_depth)
    with stopwatch() as watch:
        verdict = reasoner.is_consistent(document.full_abox(), document.full_tbox())

    record = OutputRecord(
        command="consistency",
        stats=reasoner.cache_info(),
        extra={"consistency": verdict.value},
    )
    finish(record, table=table, timing=timing, watch=watch)


@click.command("entails")
@click.option("--kb", "kb_path", required=True, help="Knowledge base (.kbq).")
@click.option("--query", "query_path", required=True, help="Query file.")
@chase_depth_option
@output_options
def entails_command(kb_path, query_path, chase_depth, table, decimal, timing):
    """Three-valued entailment of the query by the whole knowledge base."""
    document = load_kb(kb_path)
    query = load_query(query_path)
    reasoner = Reasoner(depth_limit=chase_depth)
    with stopwatch() as watch:
        verdict = reasoner.entails(document.full_abox(), document.full_tbox(), query)

    record = OutputRecord(
        command="entails",
        stats=reasoner.cache_info(),
        extra={"verdict": verdict.value},
    )
    finish(record, table=table, timing=timing, watch=watch)
