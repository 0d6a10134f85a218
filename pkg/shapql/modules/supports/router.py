import click

from shapql.core.output import OutputRecord
from shapql.dependencies.inputs import load_kb, load_query
from shapql.dependencies.options import (
    chase_depth_option,
    finish,
    output_options,
    stopwatch,
    threads_option,
)
from shapql.modules.games.service import game_from_kb
from shapql.modules.reasoner.service import Reasoner
from shapql.modules.supports.service import (
    all_supports_connected,
    enumerate_supports,
    support_size_bound,
)


@click.command("supports")
@click.option("--kb", "kb_path", required=True, help="Knowledge base (.kbq).")
@click.option("--query", "query_path", required=True, help="Query file.")
@click.option("--cap", type=click.IntRange(min=0), default=None, help="Largest support size searched.")
@chase_depth_option
@threads_option
@output_options
def supports_command(kb_path, query_path, cap, chase_depth, threads, table, decimal, timing):
    """Minimal supports of the query among the endogenous elements."""
    document = load_kb(kb_path)
    query = load_query(query_path)
    reasoner = Reasoner(depth_limit=chase_depth)

    with stopwatch() as watch:
        game = game_from_kb(document.to_partitioned_kb(), query, reasoner=reasoner)
        ss = enumerate_supports(game, cap, threads)
        extra = {
            "supports": ss.to_lists(),
            "complete": ss.complete,
            "connected": all_supports_connected(ss),
            "relevant": {str(p): ss.contains_player(p) for p in ss.players},
        }
        if ss.complete:
            extra["size_bound"] = support_size_bound(ss)

    record = OutputRecord(command="supports", stats=game.stats(), extra=extra)
    finish(record, table=table, timing=timing, watch=watch)
