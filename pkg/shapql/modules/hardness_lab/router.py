import click

from shapql.core.exceptions import FixtureError
from shapql.core.output import OutputRecord
from shapql.core.validators import format_rational
from shapql.dependencies.inputs import load_bipartite, load_digraph, load_fixture
from shapql.dependencies.options import (
    chase_depth_option,
    finish,
    output_options,
    stopwatch,
    threads_option,
)
from shapql.modules.hardness_lab.encoding import bipartite_encoding, verify_coalition_bijection
from shapql.modules.hardness_lab.independent_sets import (
    count_independent_sets_brute,
    independent_set_sizes_via_shapley,
)
from shapql.modules.hardness_lab.interfaces import (
    classify_interface,
    find_unsplittable_interface,
    splittable_interfaces,
)
from shapql.modules.hardness_lab.reductions import (
    count_st_subgraphs_brute,
    count_st_subgraphs_via_shapley,
    encoding_vectors,
)
from shapql.modules.reasoner.service import Reasoner


@click.group("lab")
def router():
    """Counting reductions checked against brute force."""


def fixture_options(fn):
    for option in reversed(
        [
            click.option("--kb", "kb_path", required=True, help="A° in a .kbq file."),
            click.option("--query", "query_path", required=True, help="UCQ file."),
            click.option("--path", "path_names", required=True, help="a0,a1,...,ak"),
            click.option(
                "--interface",
                "chi",
                type=int,
                default=None,
                help="χ of the interface (a_χ, a_χ+1); defaults to the first unsplittable one.",
            ),
        ]
    ):
        fn = option(fn)
    return fn


def _interface(fixture, chi, reasoner) -> int:
    if chi is not None:
        return chi
    chosen = find_unsplittable_interface(fixture, reasoner=reasoner)
    if chosen is None:
        raise FixtureError("Every interface of the path is splittable")
    return chosen


@router.command("st-count")
@click.option("--graph", "graph_path", required=True, help="Digraph file.")
@threads_option
@output_options
def st_count(graph_path, threads, table, decimal, timing):
    """Edge subsets connecting s to t, via Shapley values and by brute force."""
    g = load_digraph(graph_path)
    reasoner = Reasoner()
    with stopwatch() as watch:
        via_shapley = count_st_subgraphs_via_shapley(g, reasoner=reasoner, threads=threads)
        brute = count_st_subgraphs_brute(g)

    record = OutputRecord(
        command="lab st-count",
        stats=reasoner.cache_info(),
        extra={"via_shapley": via_shapley, "brute": brute, "match": via_shapley == brute},
    )
    finish(record, table=table, timing=timing, watch=watch)


@router.command("is-count")
@fixture_options
@click.option("--graph", "graph_path", required=True, help="Bipartite graph file.")
@chase_depth_option
@threads_option
@output_options
def is_count(
    kb_path, query_path, path_names, chi, graph_path, chase_depth, threads,
    table, decimal, timing,
):
    """Independent sets of a bipartite graph, via Shapley values and by brute force."""
    fixture = load_fixture(kb_path, query_path, path_names)
    g = load_bipartite(graph_path)
    reasoner = Reasoner(depth_limit=chase_depth)
    with stopwatch() as watch:
        interface = _interface(fixture, chi, reasoner)
        sizes = independent_set_sizes_via_shapley(
            fixture, interface, g, reasoner=reasoner, threads=threads
        )
        brute = count_independent_sets_brute(g)

    record = OutputRecord(
        command="lab is-count",
        stats=reasoner.cache_info(),
        extra={
            "interface": interface,
            "via_shapley": sum(sizes),
            "by_size": list(sizes),
            "brute": brute.total,
            "match": tuple(sizes) == brute.by_size,
        },
    )
    finish(record, table=table, timing=timing, watch=watch)


@router.command("verify-bijection")
@fixture_options
@click.option("--graph", "graph_path", required=True, help="Bipartite graph file.")
@chase_depth_option
@output_options
def verify_bijection(
    kb_path, query_path, path_names, chi, graph_path, chase_depth, table, decimal, timing,
):
    """Winning coalitions of the encoding are exactly the non-independent vertex sets."""
    fixture = load_fixture(kb_path, query_path, path_names)
    g = load_bipartite(graph_path)
    reasoner = Reasoner(depth_limit=chase_depth)
    with stopwatch() as watch:
        interface = _interface(fixture, chi, reasoner)
        encoded = bipartite_encoding(fixture, interface, g)
        holds = verify_coalition_bijection(encoded, g, reasoner=reasoner)

    record = OutputRecord(
        command="lab verify-bijection",
        stats=reasoner.cache_info(),
        extra={
            "interface": interface,
            "players": len(encoded.eta),
            "holds": holds,
        },
    )
    finish(record, table=table, timing=timing, watch=watch)


@router.command("interfaces")
@fixture_options
@chase_depth_option
@output_options
def interfaces(kb_path, query_path, path_names, chi, chase_depth, table, decimal, timing):
    """Splittability of every interface along the path."""
    fixture = load_fixture(kb_path, query_path, path_names)
    reasoner = Reasoner(depth_limit=chase_depth)
    with stopwatch() as watch:
        verdicts = splittable_interfaces(fixture, reasoner=reasoner)
        extra: dict = {
            "splittable": {str(c): v for c, v in verdicts.items()},
            "unsplittable": next((c for c, v in verdicts.items() if not v), None),
        }
        if chi is not None:
            split = classify_interface(fixture, chi)
            extra["classification"] = {
                part: sorted(str(a) for a in getattr(split, part))
                for part in ("below", "left", "right", "detached")
            }

    record = OutputRecord(command="lab interfaces", stats=reasoner.cache_info(), extra=extra)
    finish(record, table=table, timing=timing, watch=watch)


@router.command("game-iso")
@click.option("--graph", "graph_path", required=True, help="Digraph file.")
@threads_option
@output_options
def game_iso(graph_path, threads, table, decimal, timing):
    """Per-edge Shapley vectors of the five graph encodings."""
    g = load_digraph(graph_path)
    reasoner = Reasoner()
    with stopwatch() as watch:
        vectors = encoding_vectors(g, reasoner=reasoner, threads=threads)

    reference = vectors["reachability"]
    record = OutputRecord.from_values(
        "lab game-iso",
        {f"{v}->{w}": value for (v, w), value in zip(g.edges, reference)},
        decimal=decimal,
        stats=reasoner.cache_info(),
        extra={
            "vectors": {
                name: [format_rational(value) for value in vector]
                for name, vector in vectors.items()
            },
            "identical": all(vector == reference for vector in vectors.values()),
        },
    )
    finish(record, table=table, timing=timing, watch=watch)
