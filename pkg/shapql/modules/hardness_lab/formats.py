"""
Line formats for graph inputs.

Digraph: the first two lines name the source and target, every later line
is one directed edge. ``#`` starts a comment::

    s s0
    t t0
    s0 a
    a t0

Bipartite: the ``X:`` and ``Y:`` lines list the parts, every later line is
one edge from X to Y::

    X: x1 x2
    Y: y1
    x1 y1
"""

import re
from collections.abc import Iterator

from shapql.core.exceptions import ParseError, ValidationError
from shapql.core.validators import Identifiers
from shapql.modules.hardness_lab.models import BipartiteGraph, DiGraph


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _vertices(tokens: list[str], number: int, what: str) -> list[str]:
    for column, token in enumerate(tokens, start=1):
        if not re.fullmatch(Identifiers.VERTEX, token):
            raise ParseError(f"{what}: bad vertex name {token!r}", line=number, column=column)
    return tokens


def _edge(tokens: list[str], number: int, what: str) -> tuple[str, str]:
    if len(tokens) != 2:
        raise ParseError(f"{what}: expected 'v w'", line=number, column=1)
    v, w = _vertices(tokens, number, what)
    return v, w


def parse_digraph(text: str) -> DiGraph:
    header: dict[str, str] = {}
    edges: list[tuple[str, str]] = []
    for number, tokens in _lines(text):
        if len(header) < 2:
            key = tokens[0]
            if key not in ("s", "t") or key in header or len(tokens) != 2:
                raise ParseError(
                    "digraph: expected 's <name>' and 't <name>' before the edges",
                    line=number,
                    column=1,
                )
            header[key] = _vertices(tokens[1:], number, "digraph")[0]
            continue
        edges.append(_edge(tokens, number, "digraph"))

    if len(header) < 2:
        raise ParseError("digraph: missing 's' or 't' line")
    try:
        return DiGraph.from_edges(edges, header["s"], header["t"])
    except ValidationError as exc:
        raise ParseError(f"digraph: {exc.message}") from None


def parse_bipartite(text: str) -> BipartiteGraph:
    parts: dict[str, tuple[str, ...]] = {}
    edges: list[tuple[str, str]] = []
    for number, tokens in _lines(text):
        if len(parts) < 2:
            label = tokens[0].rstrip(":")
            if not tokens[0].endswith(":") or label not in ("X", "Y") or label in parts:
                raise ParseError(
                    "bipartite graph: expected 'X:' and 'Y:' lines before the edges",
                    line=number,
                    column=1,
                )
            parts[label] = tuple(_vertices(tokens[1:], number, "bipartite graph"))
            continue
        edges.append(_edge(tokens, number, "bipartite graph"))

    if len(parts) < 2:
        raise ParseError("bipartite graph: missing 'X:' or 'Y:' line")
    try:
        return BipartiteGraph(x=parts["X"], y=parts["Y"], edges=tuple(edges))
    except ValidationError as exc:
        raise ParseError(f"bipartite graph: {exc.message}") from None


def serialize_digraph(g: DiGraph) -> str:
    lines = [f"s {g.source}", f"t {g.target}"]
    lines.extend(f"{v} {w}" for v, w in g.edges)
    return "\n".join(lines) + "\n"


def serialize_bipartite(g: BipartiteGraph) -> str:
    lines = ["X: " + " ".join(g.x), "Y: " + " ".join(g.y)]
    lines.extend(f"{a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"
