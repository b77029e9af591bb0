"""Concrete syntax for knowledge bases and queries (the ``.dkb`` format).

One axiom per line: ``concept [= concept`` for strict inclusions and
``concept ~[= concept`` for defeasible ones.  ``#`` starts a comment and
blank lines are ignored.  Concepts use an ASCII grammar mirroring the usual
DL precedence (``!`` > quantifier > ``&`` > ``|``):

    concept := disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | 'exists' ROLE '.' unary | 'forall' ROLE '.' unary
             | 'top' | 'bot' | ATOM | '(' concept ')'

ATOM and ROLE are ``[A-Za-z][A-Za-z0-9_]*``; ``top``, ``bot``, ``exists``
and ``forall`` are reserved.  Quantifier fillers bind at unary precedence,
so ``exists r.A & B`` parses as ``(exists r.A) & B``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Axiom,
    Bottom,
    Concept,
    DCI,
    Exists,
    Forall,
    GCI,
    KnowledgeBase,
    Not,
    Or,
    Top,
)

RESERVED = {"top", "bot", "exists", "forall"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<dsub>~\[=)
  | (?P<sub>\[=)
  | (?P<punct>[()&|!.])
  | (?P<newline>\n)
""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token or axiom in its source file."""

    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParsedDocument:
    kb: KnowledgeBase
    axiom_spans: tuple[SourceSpan, ...]  # aligned with tbox then dtbox


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class UnknownDirectiveError(ParseError):
    pass


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", "keyword", "[=", "~[=", "(", ")", "&", "|", "!", ".", "eol", "eof"
    text: str
    span: SourceSpan


def _tokenize(text: str, filename: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", SourceSpan(filename, line, col)
            )
        span = SourceSpan(filename, line, col)
        kind = m.lastgroup
        tok = m.group()
        pos = m.end()
        if kind == "newline":
            tokens.append(_Token("eol", "\n", span))
            line += 1
            col = 1
            continue
        col += len(tok)
        if kind in ("ws", "comment"):
            continue
        if kind == "name":
            tokens.append(
                _Token("keyword" if tok in RESERVED else "name", tok, span)
            )
        elif kind == "dsub":
            tokens.append(_Token("~[=", tok, span))
        elif kind == "sub":
            tokens.append(_Token("[=", tok, span))
        else:
            tokens.append(_Token(tok, tok, span))
    tokens.append(_Token("eof", "", SourceSpan(filename, line, col)))
    return tokens


def _describe(tok: _Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "eol":
        return "end of line"
    return repr(tok.text)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {_describe(tok)}", tok.span)
        return self.advance()

    def skip_blank_lines(self) -> None:
        while self.peek().kind == "eol":
            self.advance()

    # concept := disj ; disj := conj ('|' conj)* ; conj := unary ('&' unary)*
    def concept(self) -> Concept:
        parts = [self.conj()]
        while self.peek().kind == "|":
            self.advance()
            parts.append(self.conj())
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Or(p, out)
        return out

    def conj(self) -> Concept:
        parts = [self.unary()]
        while self.peek().kind == "&":
            self.advance()
            parts.append(self.unary())
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = And(p, out)
        return out

    def unary(self) -> Concept:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.unary())
        if tok.kind == "keyword":
            self.advance()
            if tok.text == "top":
                return TOP
            if tok.text == "bot":
                return BOTTOM
            role = self.expect("name", "a role name")
            self.expect(".", "'.'")
            filler = self.unary()
            ctor = Exists if tok.text == "exists" else Forall
            return ctor(role.text, filler)
        if tok.kind == "name":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "(":
            self.advance()
            c = self.concept()
            self.expect(")", "')'")
            return c
        raise ParseError(f"expected a concept, found {_describe(tok)}", tok.span)

    def axiom(self) -> tuple[Axiom, SourceSpan]:
        span = self.peek().span
        lhs = self.concept()
        tok = self.peek()
        if tok.kind not in ("[=", "~[="):
            raise ParseError(
                f"expected '[=' or '~[=', found {_describe(tok)}", tok.span
            )
        self.advance()
        rhs = self.concept()
        ctor = GCI if tok.kind == "[=" else DCI
        return ctor(lhs, rhs), span

    def end_of_line(self) -> None:
        tok = self.peek()
        if tok.kind not in ("eol", "eof"):
            raise ParseError(f"expected end of line, found {_describe(tok)}", tok.span)
        if tok.kind == "eol":
            self.advance()


def parse_kb(text: str, filename: str = "<string>") -> ParsedDocument:
    """Parse a knowledge-base document, preserving axiom order and duplicates."""
    for m in re.finditer(r"^[ \t]*@\S*", text, re.MULTILINE):
        line = text.count("\n", 0, m.start()) + 1
        col = m.start() - text.rfind("\n", 0, m.start())
        raise UnknownDirectiveError(
            f"unknown directive {m.group().strip()!r}",
            SourceSpan(filename, line, col),
        )
    parser = _Parser(_tokenize(text, filename))
    gcis: list[tuple[GCI, SourceSpan]] = []
    dcis: list[tuple[DCI, SourceSpan]] = []
    parser.skip_blank_lines()
    while parser.peek().kind != "eof":
        axiom, span = parser.axiom()
        parser.end_of_line()
        if isinstance(axiom, GCI):
            gcis.append((axiom, span))
        else:
            dcis.append((axiom, span))
        parser.skip_blank_lines()
    kb = KnowledgeBase(
        tbox=tuple(a for a, _ in gcis), dtbox=tuple(a for a, _ in dcis)
    )
    spans = tuple(s for _, s in gcis) + tuple(s for _, s in dcis)
    return ParsedDocument(kb, spans)


def parse_query(text: str, filename: str = "<query>") -> Axiom:
    """Parse exactly one axiom (strict or defeasible)."""
    parser = _Parser(_tokenize(text, filename))
    parser.skip_blank_lines()
    axiom, _ = parser.axiom()
    parser.skip_blank_lines()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError("expected a single axiom", tok.span)
    return axiom


def parse_concept(text: str, filename: str = "<concept>") -> Concept:
    """Parse a bare concept expression."""
    parser = _Parser(_tokenize(text, filename))
    parser.skip_blank_lines()
    c = parser.concept()
    parser.skip_blank_lines()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"expected end of input, found {tok.text!r}", tok.span)
    return c


# Rendering: minimal parentheses under the grammar's precedence.
# Or has precedence 0, And 1, everything else binds tighter (2).

def _prec(c: Concept) -> int:
    if isinstance(c, Or):
        return 0
    if isinstance(c, And):
        return 1
    return 2


def _render(c: Concept, min_prec: int) -> str:
    if _prec(c) < min_prec:
        return "(" + _render(c, 0) + ")"
    if isinstance(c, Top):
        return "top"
    if isinstance(c, Bottom):
        return "bot"
    if isinstance(c, Atom):
        return c.name
    if isinstance(c, Not):
        return "!" + _render(c.operand, 2)
    if isinstance(c, Exists):
        return f"exists {c.role}." + _render(c.filler, 2)
    if isinstance(c, Forall):
        return f"forall {c.role}." + _render(c.filler, 2)
    if isinstance(c, And):
        # Right-nested chains render flat; anything else re-parenthesizes.
        return _render(c.left, 2) + " & " + _render(c.right, 1)
    return _render(c.left, 1) + " | " + _render(c.right, 0)


def render_concept(c: Concept) -> str:
    return _render(c, 0)


def render_axiom(a: Axiom) -> str:
    op = "[=" if isinstance(a, GCI) else "~[="
    return f"{render_concept(a.lhs)} {op} {render_concept(a.rhs)}"


def axiom_to_json(a: Axiom) -> dict:
    return {
        "kind": "gci" if isinstance(a, GCI) else "dci",
        "lhs": render_concept(a.lhs),
        "rhs": render_concept(a.rhs),
    }


def axiom_from_json(d: dict) -> Axiom:
    ctor = {"gci": GCI, "dci": DCI}[d["kind"]]
    return ctor(parse_concept(d["lhs"]), parse_concept(d["rhs"]))
