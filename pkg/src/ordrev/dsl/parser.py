"""Recursive-descent parser for family descriptions.

    file     := stmt (";" stmt)* [";"]
    stmt     := orient "(" body ")" [loop] [mult]
    orient   := "wo" | "rwo"
    body     := term ("+" term)* [loop]
    term     := "w" ["^" atom] ["*" NAT] | NAT ["*" IDENT] | IDENT
    atom     := NAT | "w" | "(" ordexpr ")"
    loop     := "for" IDENT "in" "nat"
    mult     := "x" (NAT | "inf" | "aleph" NAT)

A statement may use its loop variable in one term; only natural numbers may
follow that term. ``#`` starts a comment running to the end of the line and
``ω`` may be written for ``w``. Spans are byte offsets into the UTF-8 input.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from ordrev.core.counts import INF, Count
from ordrev.core.family import (
    ChainEntry,
    FamilyPresentation,
    Orientation,
    Progression,
    Single,
    validate_entry,
)
from ordrev.core.ordinal import OMEGA, ONE, ZERO, Ordinal, add, decompose, make_cnf
from ordrev.errors import InvalidPresentation, OrdrevError, ParseError, SourceSpan

logger = logging.getLogger(__name__)

KEYWORDS = frozenset({"wo", "rwo", "w", "x", "inf", "aleph", "for", "in", "nat"})

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<nat>\d+)|(?P<word>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<omega>ω)|(?P<punct>[();+*^])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "word", "punct" or "eof"
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    """Split input into tokens, dropping whitespace and comments."""
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))

    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            span = SourceSpan(offsets[pos], offsets[pos + 1])
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind = match.lastgroup
        start, end = match.span()
        pos = end
        if kind in ("ws", "comment"):
            continue
        value = match.group()
        if kind == "omega":
            kind, value = "word", "w"
        tokens.append(Token(kind or "punct", value, SourceSpan(offsets[start], offsets[end])))
    tokens.append(Token("eof", "", SourceSpan(offsets[-1], offsets[-1])))
    return tokens


@dataclass
class _Term:
    """One summand of a statement body: an ordinal, or d times the loop variable."""
    ordinal: Ordinal | None
    loop_coeff: int
    loop_var: str | None
    is_nat: bool
    span: SourceSpan


class Reader:
    """Token cursor."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def next(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def matches(self, *values: str) -> bool:
        token = self.peek()
        return token.kind in ("word", "punct") and token.text in values

    def expect(self, *values: str) -> Token:
        if not self.matches(*values):
            raise self.error(set(values))
        return self.next()

    def expect_nat(self) -> Token:
        if self.peek().kind != "nat":
            raise self.error({"NAT"})
        return self.next()

    def error(self, expected: set[str]) -> ParseError:
        token = self.peek()
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return ParseError(f"unexpected {found}", token.span, frozenset(expected))


def _join(start: SourceSpan, end: SourceSpan) -> SourceSpan:
    return SourceSpan(start.start, end.end)


def _with_span(exc: OrdrevError, span: SourceSpan) -> OrdrevError:
    if exc.span is not None:
        return exc
    return type(exc)(exc.message, span)


# ---------------------------------------------------------------------------
# Ordinal expressions
# ---------------------------------------------------------------------------

def _ordexpr(reader: Reader) -> Ordinal:
    total = _power_term(reader)
    while reader.matches("+"):
        reader.next()
        total = add(total, _power_term(reader))
    return total


def _power_term(reader: Reader) -> Ordinal:
    token = reader.peek()
    if token.kind == "nat":
        reader.next()
        return Ordinal.of(int(token.text))
    if reader.matches("w"):
        reader.next()
        exponent = ONE
        if reader.matches("^"):
            reader.next()
            exponent = _atom(reader)
        coeff = 1
        if reader.matches("*"):
            reader.next()
            coeff = int(reader.expect_nat().text)
        try:
            return make_cnf([(exponent, coeff)])
        except OrdrevError as exc:
            raise _with_span(exc, _join(token.span, reader.tokens[reader.index - 1].span)) from exc
    raise reader.error({"NAT", "w"})


def _atom(reader: Reader) -> Ordinal:
    token = reader.peek()
    if token.kind == "nat":
        reader.next()
        return Ordinal.of(int(token.text))
    if reader.matches("w"):
        reader.next()
        return OMEGA
    if reader.matches("("):
        reader.next()
        value = _ordexpr(reader)
        reader.expect(")")
        return value
    raise reader.error({"NAT", "w", "("})


def parse_ordinal(text: str) -> Ordinal:
    """
    Parse a standalone ordinal expression such as ``w^2*3 + w + 4``.

    Raises:
        ParseError, MalformedCNF: with spans
    """
    reader = Reader(tokenize(text))
    value = _ordexpr(reader)
    if reader.peek().kind != "eof":
        raise reader.error({"+", "end of input"})
    return value


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------

def _body_term(reader: Reader) -> _Term:
    token = reader.peek()
    if token.kind == "word" and token.text not in KEYWORDS:
        reader.next()
        return _Term(None, 1, token.text, False, token.span)
    if token.kind == "nat":
        reader.next()
        if reader.matches("*"):
            reader.next()
            var = reader.peek()
            if var.kind != "word" or var.text in KEYWORDS:
                raise reader.error({"IDENT"})
            reader.next()
            return _Term(None, int(token.text), var.text, False, _join(token.span, var.span))
        return _Term(Ordinal.of(int(token.text)), 0, None, True, token.span)
    if reader.matches("w"):
        value = _power_term(reader)
        return _Term(value, 0, None, False, _join(token.span, reader.tokens[reader.index - 1].span))
    raise reader.error({"NAT", "w", "IDENT"})


def _loop(reader: Reader) -> tuple[str, SourceSpan]:
    start = reader.expect("for")
    var = reader.peek()
    if var.kind != "word" or var.text in KEYWORDS:
        raise reader.error({"IDENT"})
    reader.next()
    reader.expect("in")
    end = reader.expect("nat")
    return var.text, _join(start.span, end.span)


def _multiplicity(reader: Reader) -> tuple[Count, SourceSpan]:
    start = reader.expect("x")
    if reader.matches("inf"):
        return INF, _join(start.span, reader.next().span)
    if reader.matches("aleph"):
        reader.next()
        index = reader.expect_nat()
        return INF, _join(start.span, index.span)
    token = reader.peek()
    if token.kind != "nat":
        raise reader.error({"NAT", "inf", "aleph"})
    reader.next()
    if int(token.text) == 0:
        raise InvalidPresentation("multiplicity must be at least 1", token.span)
    return Count.fin(int(token.text)), _join(start.span, token.span)


def _statement(reader: Reader) -> ChainEntry:
    head = reader.expect("wo", "rwo")
    orientation = Orientation(head.text)
    reader.expect("(")

    terms = [_body_term(reader)]
    while reader.matches("+"):
        reader.next()
        terms.append(_body_term(reader))

    bound: tuple[str, SourceSpan] | None = None
    if reader.matches("for"):
        bound = _loop(reader)
    reader.expect(")")
    if bound is None and reader.matches("for"):
        bound = _loop(reader)

    count: Count | None = None
    count_span: SourceSpan | None = None
    if reader.matches("x"):
        count, count_span = _multiplicity(reader)

    span = _join(head.span, reader.tokens[reader.index - 1].span)
    entry = _build_entry(orientation, terms, bound, count, count_span, span)
    try:
        validate_entry(entry)
    except OrdrevError as exc:
        raise _with_span(exc, span) from exc
    return entry


def _build_entry(
    orientation: Orientation,
    terms: list[_Term],
    bound: tuple[str, SourceSpan] | None,
    count: Count | None,
    count_span: SourceSpan | None,
    span: SourceSpan,
) -> ChainEntry:
    loop_positions = [i for i, t in enumerate(terms) if t.loop_var is not None]
    if len(loop_positions) > 1:
        raise ParseError("the loop variable may appear in one term only", terms[loop_positions[1]].span)

    if not loop_positions:
        value = ZERO
        for term in terms:
            assert term.ordinal is not None
            value = add(value, term.ordinal)
        if bound is not None:
            # a constant body repeated for every n
            if count is not None:
                raise ParseError("a loop already repeats the chain infinitely often", count_span)
            return Single(orientation, value, INF)
        return Single(orientation, value, count or Count.fin(1))

    pos = loop_positions[0]
    loop_term = terms[pos]
    if bound is None:
        raise ParseError(f"loop variable {loop_term.loop_var!r} is not bound by 'for'", loop_term.span)
    if loop_term.loop_var != bound[0]:
        raise ParseError(
            f"loop variable {loop_term.loop_var!r} does not match 'for {bound[0]}'", loop_term.span
        )
    for term in terms[pos + 1:]:
        if not term.is_nat:
            raise ParseError("only natural numbers may follow the loop term", term.span, frozenset({"NAT"}))

    prefix = ZERO
    for term in terms[:pos]:
        assert term.ordinal is not None
        prefix = add(prefix, term.ordinal)
    suffix = sum(term.ordinal.finite_value for term in terms[pos + 1:] if term.ordinal is not None)
    dec = decompose(prefix)

    per_member = 1
    if count is not None:
        if count.is_infinite:
            raise ParseError("progressions take a finite multiplicity", count_span, frozenset({"NAT"}))
        assert count.value is not None
        per_member = count.value

    if loop_term.loop_coeff < 1:
        raise InvalidPresentation("progression step must be positive", loop_term.span)
    return Progression(orientation, dec.gamma, dec.n + suffix, loop_term.loop_coeff, per_member)


def parse(text: str) -> FamilyPresentation:
    """
    Parse a family description. The result is not normalized.

    Raises:
        ParseError: syntax error, with span and expected tokens
        ZeroOrdinal, MalformedCNF, InvalidPresentation: invalid statement, with span
    """
    reader = Reader(tokenize(text))
    entries = [_statement(reader)]
    while reader.matches(";"):
        reader.next()
        if reader.peek().kind == "eof":
            break
        entries.append(_statement(reader))
    if reader.peek().kind != "eof":
        raise reader.error({";", "end of input"})
    logger.debug(f"Parsed {len(entries)} statement(s)")
    return FamilyPresentation(tuple(entries))
