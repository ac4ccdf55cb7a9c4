"""Line-based N-Triples reader and writer."""

from __future__ import annotations

import re
from typing import Iterable, List, Optional, Union

from .errors import RDFSyntaxError
from .graph import Graph
from .terms import BNode, IRI, Literal, Triple, is_absolute_iri

_WS = re.compile(r"[ \t]*")
_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_BNODE = re.compile(r"_:([A-Za-z0-9_À-�](?:[A-Za-z0-9_\-.·À-�]*[A-Za-z0-9_\-·À-�])?)")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
# Deliberately lax: malformed tags are kept so the language-tag check can report them.
_LANGTAG = re.compile(r'@([^\s.,;<>"()\[\]#^]+)')
_ESCAPE = re.compile(r'\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))', re.S)
_ECHARS = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
           '"': '"', "'": "'", "\\": "\\"}


def unescape_string(text: str, line: int = 0, column: int = 0) -> str:
    if "\\" not in text:
        return text

    def repl(m: re.Match) -> str:
        if m.group(1) or m.group(2):
            return chr(int(m.group(1) or m.group(2), 16))
        ch = m.group(3)
        if ch not in _ECHARS:
            raise RDFSyntaxError(line, column + m.start(), f"invalid escape '\\{ch}'")
        return _ECHARS[ch]

    return _ESCAPE.sub(repl, text)


def unescape_iri(text: str, line: int = 0, column: int = 0) -> str:
    if "\\" not in text:
        return text

    def repl(m: re.Match) -> str:
        if m.group(1) or m.group(2):
            return chr(int(m.group(1) or m.group(2), 16))
        raise RDFSyntaxError(line, column + m.start(), "only \\u and \\U escapes are allowed in IRIs")

    return _ESCAPE.sub(repl, text)


class _Line:
    __slots__ = ("text", "pos", "lineno")

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def skip_ws(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def fail(self, message: str) -> RDFSyntaxError:
        return RDFSyntaxError(self.lineno, self.pos + 1, message)

    def iri(self) -> IRI:
        m = _IRIREF.match(self.text, self.pos)
        if m is None:
            raise self.fail("expected IRI")
        value = unescape_iri(m.group(1), self.lineno, self.pos + 2)
        if not is_absolute_iri(value):
            raise self.fail(f"relative IRI <{value}> is not allowed in N-Triples")
        self.pos = m.end()
        return IRI(value)

    def bnode(self, scope: str) -> BNode:
        m = _BNODE.match(self.text, self.pos)
        if m is None:
            raise self.fail("malformed blank node label")
        self.pos = m.end()
        return BNode(f"{scope}_{m.group(1)}")

    def term(self, scope: str, allow_literal: bool):
        ch = self.text[self.pos:self.pos + 1]
        if ch == "<":
            return self.iri()
        if ch == "_":
            return self.bnode(scope)
        if ch == '"' and allow_literal:
            return self.literal()
        raise self.fail("unexpected character" if ch else "unexpected end of line")

    def literal(self) -> Literal:
        m = _STRING.match(self.text, self.pos)
        if m is None:
            raise self.fail("unterminated string literal")
        lexical = unescape_string(m.group(1), self.lineno, self.pos + 2)
        self.pos = m.end()
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            return Literal(lexical, datatype=self.iri())
        if self.text.startswith("@", self.pos):
            t = _LANGTAG.match(self.text, self.pos)
            if t is None:
                raise self.fail("empty language tag")
            self.pos = t.end()
            return Literal(lexical, language=t.group(1))
        return Literal(lexical)


def parse_ntriples_line(text: str, lineno: int = 1, scope: str = "d0") -> Optional[Triple]:
    line = _Line(text, lineno)
    line.skip_ws()
    if line.pos >= len(text) or text[line.pos] == "#":
        return None
    s = line.term(scope, allow_literal=False)
    line.skip_ws()
    p = line.iri()
    line.skip_ws()
    o = line.term(scope, allow_literal=True)
    line.skip_ws()
    if not text.startswith(".", line.pos):
        raise line.fail("expected '.'")
    line.pos += 1
    line.skip_ws()
    if line.pos < len(text) and text[line.pos] != "#":
        raise line.fail("trailing content after '.'")
    return (s, p, o)


def parse_ntriples(data: Union[bytes, str], *, lenient: bool = False,
                   errors: Optional[List[RDFSyntaxError]] = None,
                   scope: str = "d0", graph: Optional[Graph] = None) -> Graph:
    """Parse an N-Triples document.

    In lenient mode malformed lines are skipped and appended to ``errors``;
    otherwise the first one is raised. Blank node labels are rewritten into
    ``scope`` so documents parsed with distinct scopes can be merged.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise RDFSyntaxError(1, 1, f"input is not UTF-8: {exc}") from None
    if data.startswith("﻿"):
        data = data[1:]
    g = graph if graph is not None else Graph()
    add = g.add
    for lineno, text in enumerate(data.split("\n"), start=1):
        if text.endswith("\r"):
            text = text[:-1]
        try:
            triple = parse_ntriples_line(text, lineno, scope)
        except RDFSyntaxError as exc:
            if not lenient:
                raise
            if errors is not None:
                errors.append(exc)
            continue
        if triple is not None:
            add(*triple)
    return g


def _n3(term) -> str:
    return term.n3()


def serialize_ntriples(triples: Iterable[Triple]) -> str:
    """Render triples as N-Triples, one per line, in sorted order."""
    lines = sorted(f"{_n3(s)} {_n3(p)} {_n3(o)} ." for s, p, o in triples)
    return "".join(line + "\n" for line in lines)
