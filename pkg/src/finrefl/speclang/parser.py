"""Tokenizer, syntax tree and recursive-descent parser for reflection documents.

Statements inside a block are separated by newlines or ``;``.  Comments
run from ``#`` to the end of the line.  On a syntax error the parser
records it and resumes after the enclosing block, so one bad block does
not hide errors in later ones.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

IDENT_RE = r"[A-Za-z0-9_'~^*+]+"

_TOKEN = re.compile(rf"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<punct>[{{}}(),:;.=])
  | (?P<ident>{IDENT_RE})
  | (?P<bad>.)
""", re.VERBOSE)

ADJUNCTION_SLOTS = ("left", "right", "unit", "counit")
KEYWORDS = ("category", "functor", "relation", "map", "family", "adjunction", "instance")


@dataclass(frozen=True)
class Token:
    kind: str  # ident, punct, nl, eof
    text: str
    line: int
    col: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        if self.kind == "nl":
            return "end of line"
        return repr(self.text)


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class ParseError(Exception):
    def __init__(self, line: int, col: int, expected: tuple[str, ...], found: str):
        self.line, self.col, self.expected, self.found = line, col, tuple(expected), found
        super().__init__(f"{line}:{col}: expected {' or '.join(expected)}, found {found}")

    @property
    def location(self) -> str:
        return f"{self.line}:{self.col}"


class ParseFailure(Exception):
    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors))


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "nl":
            out.append(Token("nl", "\n", line, col))
            line, line_start = line + 1, m.end()
        elif kind in ("ws", "comment"):
            continue
        elif kind == "bad":
            raise ParseFailure([ParseError(line, col, ("identifier", "punctuation"), repr(m.group()))])
        else:
            out.append(Token("punct" if kind in ("punct", "arrow") else "ident", m.group(), line, col))
    out.append(Token("eof", "", line, len(text) - line_start + 1))
    return out


# syntax tree; positions are excluded from equality so round-trips compare by content

Key = Union[str, tuple[str, str]]


@dataclass(frozen=True)
class ArrowDecl:
    name: str
    src: str
    tgt: str
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class ComposeDecl:
    g: str
    f: str
    result: str
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class IdentityDecl:
    obj: str
    arrow: str
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class CategoryDecl:
    name: str
    objects: tuple[str, ...]
    identities: tuple[IdentityDecl, ...] = ()
    arrows: tuple[ArrowDecl, ...] = ()
    composes: tuple[ComposeDecl, ...] = ()
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class Assign:
    key: Key
    value: Key
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    dom: str
    cod: str
    objects: tuple[Assign, ...] = ()
    arrows: tuple[Assign, ...] = ()
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class RelationDecl:
    name: str
    entries: tuple[tuple[str, str], ...]
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class MapDecl:
    name: str
    dom: str
    cod: str
    items: tuple[Assign, ...] = ()
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class FamilyDecl:
    name: str
    on: str
    items: tuple[Assign, ...] = ()
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class AdjunctionDecl:
    name: str
    left: str
    right: str
    unit: str
    counit: str
    pos: Pos = field(default=Pos(0, 0), compare=False)


@dataclass(frozen=True)
class InstanceDecl:
    name: str
    pos: Pos = field(default=Pos(0, 0), compare=False)


Decl = Union[CategoryDecl, FunctorDecl, RelationDecl, MapDecl, FamilyDecl, AdjunctionDecl, InstanceDecl]


@dataclass(frozen=True)
class SpecDocument:
    decls: tuple[Decl, ...]

    def of_type(self, kind: type) -> list:
        return [d for d in self.decls if isinstance(d, kind)]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.depth = 0
        self.errors: list[ParseError] = []

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, *expected: str) -> ParseError:
        t = self.tok
        return ParseError(t.line, t.col, expected, t.describe())

    def skip_nl(self) -> None:
        while self.tok.kind == "nl":
            self.advance()

    def punct(self, text: str, skip_nl: bool = False) -> Token:
        if skip_nl:
            self.skip_nl()
        if self.tok.kind == "punct" and self.tok.text == text:
            return self.advance()
        raise self.fail(repr(text))

    def ident(self, what: str = "identifier") -> str:
        if self.tok.kind == "ident":
            return self.advance().text
        raise self.fail(what)

    def keyword(self, word: str) -> None:
        if self.tok.kind == "ident" and self.tok.text == word:
            self.advance()
            return
        raise self.fail(repr(word))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def end_statement(self) -> None:
        if self.tok.kind == "nl" or self.at(";"):
            self.advance()
        elif not self.at("}"):
            raise self.fail("';'", "end of line", "'}'")

    def block(self, statement) -> None:
        """``{ statement (sep statement)* }`` where separators are ``;`` or newlines."""
        self.punct("{", skip_nl=True)
        self.depth += 1
        while True:
            while self.tok.kind == "nl" or self.at(";"):
                self.advance()
            if self.at("}"):
                self.advance()
                self.depth -= 1
                return
            if self.tok.kind == "eof":
                raise self.fail("'}'")
            statement()
            self.end_statement()

    def key(self) -> Key:
        if self.at("("):
            self.advance()
            a = self.ident("object")
            self.punct(",")
            b = self.ident("object")
            self.punct(")")
            return (a, b)
        return self.ident("identifier or entry")

    def pos(self) -> Pos:
        return Pos(self.tok.line, self.tok.col)

    # declarations

    def category(self, p: Pos) -> CategoryDecl:
        name = self.ident("category name")
        objects: list[str] = []
        ids: list[IdentityDecl] = []
        arrows: list[ArrowDecl] = []
        comps: list[ComposeDecl] = []

        def stmt():
            sp = self.pos()
            if self.at("objects"):
                self.advance()
                self.punct(":")
                while self.tok.kind == "ident":
                    objects.append(self.advance().text)
            elif self.at("identity"):
                self.advance()
                x = self.ident("object")
                self.punct("=")
                ids.append(IdentityDecl(x, self.ident("arrow"), sp))
            elif self.at("arrow"):
                self.advance()
                f = self.ident("arrow name")
                self.punct(":")
                s = self.ident("source object")
                self.punct("->")
                t = self.ident("target object")
                arrows.append(ArrowDecl(f, s, t, sp))
            elif self.at("compose"):
                self.advance()
                g = self.ident("arrow")
                self.punct(".")
                f = self.ident("arrow")
                self.punct("=")
                comps.append(ComposeDecl(g, f, self.ident("arrow"), sp))
            else:
                raise self.fail("'objects'", "'identity'", "'arrow'", "'compose'")

        self.block(stmt)
        return CategoryDecl(name, tuple(objects), tuple(ids), tuple(arrows), tuple(comps), p)

    def functor(self, p: Pos) -> FunctorDecl:
        name = self.ident("functor name")
        self.punct(":")
        dom = self.ident("category")
        self.punct("->")
        cod = self.ident("category")
        objs: list[Assign] = []
        arrs: list[Assign] = []

        def stmt():
            sp = self.pos()
            if self.at("object"):
                self.advance()
                target = objs
            elif self.at("arrow"):
                self.advance()
                target = arrs
            else:
                raise self.fail("'object'", "'arrow'")
            a = self.ident()
            self.punct("->")
            target.append(Assign(a, self.ident(), sp))

        self.block(stmt)
        return FunctorDecl(name, dom, cod, tuple(objs), tuple(arrs), p)

    def relation(self, p: Pos) -> RelationDecl:
        name = self.ident("relation name")
        entries: list[tuple[str, str]] = []

        def stmt():
            while self.at("("):
                k = self.key()
                entries.append(k)
            if not entries or not (self.tok.kind == "nl" or self.at(";") or self.at("}")):
                raise self.fail("'('")

        self.block(stmt)
        return RelationDecl(name, tuple(entries), p)

    def assignments(self, values_are_keys: bool) -> list[Assign]:
        items: list[Assign] = []

        def stmt():
            sp = self.pos()
            k = self.key()
            self.punct("->")
            items.append(Assign(k, self.key() if values_are_keys else self.ident("arrow"), sp))

        self.block(stmt)
        return items

    def map_decl(self, p: Pos) -> MapDecl:
        name = self.ident("map name")
        self.punct(":")
        dom = self.ident()
        self.punct("->")
        cod = self.ident()
        return MapDecl(name, dom, cod, tuple(self.assignments(True)), p)

    def family(self, p: Pos) -> FamilyDecl:
        name = self.ident("family name")
        self.keyword("on")
        on = self.ident()
        return FamilyDecl(name, on, tuple(self.assignments(False)), p)

    def adjunction(self, p: Pos) -> AdjunctionDecl:
        name = self.ident("adjunction name")
        slots: dict[str, str] = {}

        def stmt():
            if not any(self.at(w) for w in ADJUNCTION_SLOTS):
                raise self.fail(*(repr(w) for w in ADJUNCTION_SLOTS))
            while self.tok.kind == "ident" and self.tok.text in ADJUNCTION_SLOTS:
                word = self.advance().text
                slots[word] = self.ident()

        self.block(stmt)
        missing = [w for w in ADJUNCTION_SLOTS if w not in slots]
        if missing:
            t = self.toks[self.i - 1]
            raise ParseError(t.line, t.col, tuple(repr(w) for w in missing), "'}'")
        return AdjunctionDecl(name, slots["left"], slots["right"], slots["unit"], slots["counit"], p)

    def recover(self) -> None:
        """Skip past the block the error occurred in, or to the next declaration."""
        depth, self.depth = self.depth, 0
        while self.tok.kind != "eof":
            t = self.advance()
            if t.kind == "punct" and t.text == "{":
                depth += 1
            elif t.kind == "punct" and t.text == "}":
                depth -= 1
                if depth <= 0:
                    return
            elif t.kind == "nl" and depth == 0:
                self.skip_nl()
                if self.tok.kind == "eof" or (self.tok.kind == "ident" and self.tok.text in KEYWORDS):
                    return

    def document(self) -> SpecDocument:
        decls: list[Decl] = []
        handlers = {"category": self.category, "functor": self.functor, "relation": self.relation,
                    "map": self.map_decl, "family": self.family, "adjunction": self.adjunction}
        while True:
            self.skip_nl()
            if self.tok.kind == "eof":
                break
            start = self.i
            p = self.pos()
            try:
                word = self.tok.text if self.tok.kind == "ident" else None
                if word in handlers:
                    self.advance()
                    decls.append(handlers[word](p))
                elif word == "instance":
                    self.advance()
                    decls.append(InstanceDecl(self.ident("instance name"), p))
                else:
                    raise self.fail(*(repr(k) for k in KEYWORDS))
                if self.tok.kind not in ("nl", "eof"):
                    raise self.fail("end of line")
            except ParseError as err:
                self.errors.append(err)
                if self.i == start:
                    self.advance()
                self.recover()
        return SpecDocument(tuple(decls))


def parse_with_errors(text: str) -> tuple[Optional[SpecDocument], list[ParseError]]:
    try:
        tokens = tokenize(text)
    except ParseFailure as exc:
        return None, exc.errors
    p = _Parser(tokens)
    doc = p.document()
    return (None if p.errors else doc), p.errors


def parse(text: str) -> SpecDocument:
    doc, errors = parse_with_errors(text)
    if errors:
        raise ParseFailure(errors)
    return doc
