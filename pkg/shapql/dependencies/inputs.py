"""
Shared loaders for command-line inputs.

Every loader turns a path into a parsed document and reports a missing or
unreadable file as an InputError, so commands exit with code 2.
"""

import logging
from pathlib import Path
from typing import Any

from shapql.core.exceptions import InputError, ValidationError
from shapql.modules.hardness_lab.formats import parse_bipartite, parse_digraph
from shapql.modules.hardness_lab.models import BipartiteGraph, DiGraph, PathFixture
from shapql.modules.kb.models import BooleanQuery, Ucq
from shapql.modules.text_io.schemas import KbDocument
from shapql.modules.text_io.service import parse_kb, parse_query

logger = logging.getLogger(__name__)


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"File not found: {path}", details={"path": path})
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror}", details={"path": path})


def load_kb(path: str) -> KbDocument:
    document = parse_kb(read_text(path))
    logger.debug(f"Loaded knowledge base from {path}")
    return document


def load_query(path: str) -> BooleanQuery:
    return parse_query(read_text(path))


def load_ucq(path: str) -> Ucq:
    query = load_query(path)
    if not isinstance(query, Ucq):
        raise ValidationError("Expected a union of conjunctive queries", field="query")
    return query


def load_digraph(path: str) -> DiGraph:
    return parse_digraph(read_text(path))


def load_bipartite(path: str) -> BipartiteGraph:
    return parse_bipartite(read_text(path))


def load_fixture(kb_path: str, query_path: str, path_names: str) -> PathFixture:
    """A° is the whole ABox of the file, the TBox its whole TBox."""
    document = load_kb(kb_path)
    individuals = [name.strip() for name in path_names.split(",") if name.strip()]
    if len(individuals) < 2:
        raise ValidationError("--path needs at least two individuals", field="path")
    return PathFixture.from_individuals(
        document.full_abox(),
        individuals,
        tbox=document.full_tbox(),
        query=load_ucq(query_path),
        dialect=document.dialect,
    )


def _canonical(text: str) -> str:
    return "".join(text.split()).rstrip(".")


def resolve_player(players: tuple[Any, ...], text: str) -> Any:
    """Find the player whose printed form matches ``text``, ignoring spaces."""
    wanted = _canonical(text)
    for player in players:
        if _canonical(str(player)) == wanted:
            return player
    raise ValidationError(
        f"{text} is not an endogenous element",
        field="player",
        errors=[str(p) for p in players],
    )
