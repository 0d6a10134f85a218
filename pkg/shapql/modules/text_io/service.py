"""
Text syntax for knowledge bases and queries.

  1. ``parse_kb``: pyparsing grammar for ``.kbq`` documents
  2. ``parse_query``: UCQs (``q :- ...``), ``reach(r, s, t).``, ``axiom C sub D.``
  3. ``serialize``: canonical text; ``parse_kb(serialize(d)) == d``

Role names are recognised by position (after ``exists``, inside ``inv(...)``,
as binary predicates). A bare ``X sub Y.`` between two names is a role
inclusion when a name is lowercase or already used as a role elsewhere in
the document; ``role X sub Y.`` forces the role reading.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp
from pydantic import ValidationError as PydanticValidationError

from shapql.core.enums import Dialect
from shapql.core.exceptions import ParseError, ValidationError
from shapql.core.validators import Identifiers, format_rational
from shapql.modules.kb.models import (
    ABox,
    And,
    Atom,
    AxiomGoal,
    BooleanQuery,
    Bot,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    CQ,
    Exists,
    Not,
    Reach,
    Role,
    RoleAssertion,
    RoleInclusion,
    Top,
    Ucq,
    Variable,
)
from shapql.modules.text_io.schemas import KbDocument

logger = logging.getLogger(__name__)


# ── raw parse results ────────────────────────────────────────────


@dataclass(frozen=True)
class _BareInclusion:
    lhs: str
    rhs: str
    negated: bool = False


@dataclass(frozen=True)
class _AnnotatedAssertion:
    assertion: ConceptAssertion | RoleAssertion
    probability: str | None


@dataclass(frozen=True)
class _Block:
    kind: str
    side: str
    items: tuple


# ── grammar ──────────────────────────────────────────────────────


def _keyword(word: str) -> pp.Keyword:
    return pp.Keyword(word, ident_chars=pp.alphanums + "_~")


LPAR, RPAR, LBRACE, RBRACE, COMMA, DOT, AT = map(pp.Suppress, "(){},.@")

KW = {word: _keyword(word) for word in sorted(Identifiers.KEYWORDS | {"role"})}
_RESERVED = Identifiers.KEYWORDS | {"role"}


def _not_reserved(tokens) -> bool:
    return tokens[0] not in _RESERVED


identifier = pp.Regex(r"[A-Za-z][A-Za-z0-9_]*").add_condition(_not_reserved)
concept_name = pp.Regex(Identifiers.CONCEPT).add_condition(_not_reserved)
individual = pp.Regex(Identifiers.LOWER).add_condition(_not_reserved)
rational = pp.Regex(r"\d+(/\d+)?")
variable = pp.Regex(r"\?[A-Za-z_][A-Za-z0-9_]*")

role = pp.Forward()
role <<= (
    (KW["inv"].suppress() + LPAR + role + RPAR).set_parse_action(
        lambda t: t[0].inverse()
    )
    | identifier.copy().set_parse_action(lambda t: Role(t[0]))
)


def _fold_and(tokens):
    parts = list(tokens)
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


concept = pp.Forward()
primary = pp.Forward()
primary <<= (
    KW["top"].copy().set_parse_action(lambda: Top())
    | KW["bot"].copy().set_parse_action(lambda: Bot())
    | (KW["exists"].suppress() + role + DOT + primary).set_parse_action(
        lambda t: Exists(t[0], t[1])
    )
    | (KW["not"].suppress() + primary).set_parse_action(lambda t: Not(t[0]))
    | concept_name.copy().set_parse_action(lambda t: ConceptName(t[0]))
    | (LPAR + concept + RPAR)
)
concept <<= (primary + pp.ZeroOrMore(KW["and"].suppress() + primary)).set_parse_action(
    _fold_and
)

forced_role_inclusion = (
    KW["role"].suppress()
    + role
    + KW["sub"].suppress()
    + pp.Optional(KW["not"])("negated")
    + role
    + DOT
).set_parse_action(
    lambda t: RoleInclusion(t[0], t[-1], negated="negated" in t)
)
bare_inclusion = (
    identifier
    + KW["sub"].suppress()
    + pp.Optional(KW["not"])("negated")
    + identifier
    + DOT
).set_parse_action(lambda t: _BareInclusion(t[0], t[-1], negated="negated" in t))
role_inclusion = (
    role + KW["sub"].suppress() + pp.Optional(KW["not"])("negated") + role + DOT
).set_parse_action(lambda t: RoleInclusion(t[0], t[-1], negated="negated" in t))
concept_inclusion = (concept + KW["sub"].suppress() + concept + DOT).set_parse_action(
    lambda t: ConceptInclusion(t[0], t[1])
)
axiom = forced_role_inclusion | bare_inclusion | role_inclusion | concept_inclusion

probability = pp.Optional(AT + rational)("probability")
concept_assertion = (concept_name + LPAR + individual + RPAR + probability + DOT).set_parse_action(
    lambda t: _AnnotatedAssertion(
        ConceptAssertion(t[0], t[1]), t[2] if len(t) > 2 else None
    )
)
role_assertion = (
    role + LPAR + individual + COMMA + individual + RPAR + probability + DOT
).set_parse_action(
    lambda t: _AnnotatedAssertion(
        RoleAssertion(t[0], t[1], t[2]).normalized(), t[3] if len(t) > 3 else None
    )
)
assertion = concept_assertion | role_assertion

side = KW["endo"] | KW["exo"]
tbox_block = (
    KW["tbox"] + side + LBRACE + pp.Group(pp.ZeroOrMore(axiom)) + RBRACE
).set_parse_action(lambda t: _Block("tbox", t[1], tuple(t[2])))
abox_block = (
    KW["abox"] + side + LBRACE + pp.Group(pp.ZeroOrMore(assertion)) + RBRACE
).set_parse_action(lambda t: _Block("abox", t[1], tuple(t[2])))

dialect_header = (
    KW["dialect"].suppress()
    + (pp.Literal("elhi-bot") | pp.Literal("dl-lite"))
    + DOT
).set_parse_action(lambda t: Dialect(t[0]))
kb_document = (
    pp.Optional(dialect_header)
    + pp.ZeroOrMore(tbox_block | abox_block)("blocks")
    + pp.StringEnd()
)
kb_document.ignore(pp.python_style_comment)

# queries
term = variable.copy().set_parse_action(lambda t: Variable(t[0][1:])) | individual
query_atom = (
    role + LPAR + term + pp.Optional(COMMA + term) + RPAR
).set_parse_action(lambda t: _make_atom(t[0], list(t[1:])))
cq_head = pp.Keyword("q") + pp.Optional(LPAR + pp.delimited_list(term) + RPAR)(
    "answer"
) + pp.Suppress(":-")
cq_line = (cq_head + pp.Group(pp.delimited_list(query_atom))("atoms") + DOT).set_parse_action(
    lambda s, loc, t: _cq_from_tokens(s, loc, t)
)
reach_line = (
    KW["reach"].suppress() + LPAR + identifier + COMMA + individual + COMMA + individual + RPAR + DOT
).set_parse_action(lambda t: Reach(t[0], t[1], t[2]))
axiom_line = (KW["axiom"].suppress() + concept_inclusion).set_parse_action(
    lambda t: AxiomGoal(t[0])
)
query_document = (
    pp.OneOrMore(cq_line).set_parse_action(lambda t: Ucq(tuple(t)))
    | reach_line
    | axiom_line
) + pp.StringEnd()
query_document.ignore(pp.python_style_comment)


def _make_atom(predicate: Role, terms: list) -> Atom:
    if len(terms) == 1:
        if predicate.inverted or not concept_name.matches(predicate.name):
            raise pp.ParseFatalException("", 0, "unary atoms need a concept name")
        return Atom(predicate.name, (terms[0],))
    if predicate.inverted:
        return Atom(predicate.name, (terms[1], terms[0]))
    return Atom(predicate.name, (terms[0], terms[1]))


def _cq_from_tokens(text: str, loc: int, tokens) -> CQ:
    if "answer" in tokens:
        raise pp.ParseFatalException(
            text, loc, "answer variables are not supported; queries are Boolean"
        )
    return CQ(frozenset(tokens["atoms"]))


# ── parsing ──────────────────────────────────────────────────────


def _raise_parse_error(error: pp.ParseBaseException, what: str) -> None:
    message = error.msg or f"Invalid {what}"
    raise ParseError(f"{what}: {message}", line=error.lineno, column=error.col)


def _role_signature(blocks: list[_Block]) -> set[str]:
    roles: set[str] = set()
    for block in blocks:
        for item in block.items:
            if isinstance(item, _AnnotatedAssertion) and isinstance(
                item.assertion, RoleAssertion
            ):
                roles.add(item.assertion.role.name)
            elif isinstance(item, RoleInclusion):
                roles |= item.role_names()
            elif isinstance(item, ConceptInclusion):
                roles |= item.role_names()
    return roles


def _resolve(item, roles: set[str]):
    if not isinstance(item, _BareInclusion):
        return item
    lhs_is_role = item.lhs in roles or not concept_name.matches(item.lhs)
    rhs_is_role = item.rhs in roles or not concept_name.matches(item.rhs)
    if lhs_is_role or rhs_is_role:
        return RoleInclusion(Role(item.lhs), Role(item.rhs), negated=item.negated)
    rhs = ConceptName(item.rhs)
    return ConceptInclusion(ConceptName(item.lhs), Not(rhs) if item.negated else rhs)


def parse_kb(text: str) -> KbDocument:
    try:
        result = kb_document.parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        _raise_parse_error(error, "knowledge base")

    dialect = next(
        (item for item in result if isinstance(item, Dialect)), Dialect.ELHI_BOT
    )
    blocks = [item for item in result if isinstance(item, _Block)]
    roles = _role_signature(blocks)

    sections: dict[tuple[str, str], set] = {
        ("tbox", "endo"): set(),
        ("tbox", "exo"): set(),
        ("abox", "endo"): set(),
        ("abox", "exo"): set(),
    }
    probabilities: dict = {}

    for block in blocks:
        for item in block.items:
            if isinstance(item, _AnnotatedAssertion):
                sections[(block.kind, block.side)].add(item.assertion)
                if item.probability is not None:
                    probabilities[item.assertion] = item.probability
            else:
                sections[(block.kind, block.side)].add(_resolve(item, roles))

    try:
        document = KbDocument(
            dialect=dialect,
            tbox_endo=frozenset(sections[("tbox", "endo")]),
            tbox_exo=frozenset(sections[("tbox", "exo")]),
            abox_endo=ABox(frozenset(sections[("abox", "endo")])),
            abox_exo=ABox(frozenset(sections[("abox", "exo")])),
            probabilities=probabilities,
        )
    except PydanticValidationError as error:
        raise ValidationError(
            "Probability outside (0,1]",
            field="probabilities",
            errors=[e["msg"] for e in error.errors()],
        )

    logger.debug(
        f"Parsed KB: {len(document.full_abox())} assertions, "
        f"{len(document.full_tbox())} axioms, dialect={dialect.value}"
    )
    return document


def parse_query(text: str) -> BooleanQuery:
    if not text.strip():
        raise ParseError("query: empty query text")
    try:
        result = query_document.parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        _raise_parse_error(error, "query")
    return result[0]


# ── serialization ────────────────────────────────────────────────


def _render_axiom(axiom) -> str:
    if isinstance(axiom, RoleInclusion) and (
        concept_name.matches(axiom.lhs.name) or concept_name.matches(axiom.rhs.name)
    ):
        return f"role {axiom}."
    return f"{axiom}."


def _render_assertion(assertion, probabilities: dict[object, Fraction]) -> str:
    suffix = ""
    if assertion in probabilities:
        suffix = f" @ {_render_probability(probabilities[assertion])}"
    return f"{assertion}{suffix}."


def _render_probability(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return format_rational(value)


def serialize(document: KbDocument) -> str:
    lines = [f"dialect {document.dialect.value}.", ""]

    for name, axioms in (("endo", document.tbox_endo), ("exo", document.tbox_exo)):
        lines.append(f"tbox {name} {{")
        lines.extend(f"  {_render_axiom(a)}" for a in sorted(axioms, key=str))
        lines.append("}")

    for name, abox in (("endo", document.abox_endo), ("exo", document.abox_exo)):
        lines.append(f"abox {name} {{")
        lines.extend(
            f"  {_render_assertion(a, document.probabilities)}" for a in abox.sorted()
        )
        lines.append("}")

    return "\n".join(lines) + "\n"


def serialize_query(query: BooleanQuery) -> str:
    if isinstance(query, Ucq):
        return "\n".join(str(cq) for cq in query.disjuncts) + "\n"
    return f"{query}\n"
