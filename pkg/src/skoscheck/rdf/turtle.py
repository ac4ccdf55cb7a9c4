"""Reader for the subset of Turtle that SKOS dumps commonly use.

Supported: ``@prefix``/``@base`` (and the SPARQL-style ``PREFIX``/``BASE``),
prefixed names, predicate lists, object lists, the ``a`` keyword, blank node
labels, ``[]`` and blank node property lists, and string, numeric and boolean
literals. Collections and quoted triples raise ``UnsupportedFeature``.
"""

from __future__ import annotations

import bisect
import re
from typing import Dict, List, Optional, Tuple, Union
from urllib.parse import urljoin

from .errors import RDFParseError, RDFSyntaxError, UnsupportedFeature
from .graph import Graph
from .ntriples import unescape_iri, unescape_string
from .terms import BNode, IRI, Literal, Term, Triple, is_absolute_iri

RDF_TYPE = IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
XSD = "http://www.w3.org/2001/XMLSchema#"

_BASE_CHARS = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF"
    "\uFDF0-\uFFFD\U00010000-\U000EFFFF"
)
_CHARS_U = _BASE_CHARS + "_"
_CHARS = _CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%]"
_PREFIX = rf"[{_BASE_CHARS}](?:[{_CHARS}.]*[{_CHARS}])?"
_LOCAL = rf"(?:[{_CHARS_U}:0-9]|{_PLX})(?:(?:[{_CHARS}.:]|{_PLX})*(?:[{_CHARS}:]|{_PLX}))?"

_SKIP = re.compile(r"(?:\s+|#[^\n]*)*")
_PNAME = re.compile(rf"({_PREFIX})?:({_LOCAL})?")
_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_BNODE = re.compile(rf"_:((?:[{_CHARS_U}0-9])(?:[{_CHARS}.]*[{_CHARS}])?)")
_LANGTAG = re.compile(r'@([^\s.,;<>"()\[\]#^]+)')
_STRINGS = [
    ('"""', re.compile(r'"""((?:[^"\\]|\\.|"(?!""))*)"""', re.S)),
    ("'''", re.compile(r"'''((?:[^'\\]|\\.|'(?!''))*)'''", re.S)),
    ('"', re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')),
    ("'", re.compile(r"'((?:[^'\\\n\r]|\\.)*)'")),
]
_NUMBER = re.compile(
    r"[+-]?(?:(?P<double>(?:[0-9]+\.[0-9]*|\.[0-9]+|[0-9]+)[eE][+-]?[0-9]+)"
    r"|(?P<decimal>[0-9]*\.[0-9]+)|(?P<integer>[0-9]+))"
)
_KEYWORD = re.compile(rf"(true|false|a)(?![{_CHARS}.:])")
_DIRECTIVE = re.compile(r"@(prefix|base)\b|(?i:(PREFIX|BASE))(?=\s)")
_LOCAL_ESCAPE = re.compile(r"\\(.)")
_RECOVER = re.compile(r"\.(?=\s|#|$)")


class _TurtleParser:

    def __init__(self, text: str, scope: str, base: Optional[str]):
        self.text = text
        self.pos = 0
        self.scope = scope
        self.base = base
        self.prefixes: Dict[str, str] = {}
        self.anon = 0
        self.pending: List[Triple] = []
        self._line_starts: Optional[List[int]] = None

    # -- positions and errors --------------------------------------------

    def location(self, pos: int) -> Tuple[int, int]:
        if self._line_starts is None:
            self._line_starts = [0] + [m.end() for m in re.finditer("\n", self.text)]
        line = bisect.bisect_right(self._line_starts, pos)
        return line, pos - self._line_starts[line - 1] + 1

    def fail(self, message: str, pos: Optional[int] = None) -> RDFSyntaxError:
        return RDFSyntaxError(*self.location(self.pos if pos is None else pos), message)

    def unsupported(self, what: str) -> UnsupportedFeature:
        return UnsupportedFeature(*self.location(self.pos), f"{what} are not supported")

    def skip(self) -> None:
        self.pos = _SKIP.match(self.text, self.pos).end()

    def peek(self, n: int = 1) -> str:
        return self.text[self.pos:self.pos + n]

    def expect(self, ch: str) -> None:
        self.skip()
        if not self.text.startswith(ch, self.pos):
            raise self.fail(f"expected '{ch}'")
        self.pos += len(ch)

    # -- document --------------------------------------------------------

    def parse(self, graph: Graph, lenient: bool, errors: Optional[List[RDFParseError]]) -> Graph:
        while True:
            self.skip()
            if self.pos >= len(self.text):
                return graph
            start = self.pos
            try:
                self.statement()
            except RDFParseError as exc:
                if not lenient:
                    raise
                if errors is not None:
                    errors.append(exc)
                self.pending.clear()
                m = _RECOVER.search(self.text, max(self.pos, start + 1))
                self.pos = m.end() if m else len(self.text)
                continue
            for triple in self.pending:
                graph.add(*triple)
            self.pending.clear()

    def statement(self) -> None:
        m = _DIRECTIVE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            sparql_style = m.group(2) is not None
            kind = (m.group(1) or m.group(2)).lower()
            self.skip()
            if kind == "prefix":
                pm = re.compile(rf"({_PREFIX})?:").match(self.text, self.pos)
                if pm is None:
                    raise self.fail("expected prefix name")
                self.pos = pm.end()
                self.skip()
                self.prefixes[pm.group(1) or ""] = self.iriref()
            else:
                self.base = self.iriref()
            if not sparql_style:
                self.expect(".")
            return
        if self.peek() == "[":
            subject = self.blank_node_property_list()
            self.skip()
            if self.peek() != ".":
                self.predicate_object_list(subject)
        else:
            subject = self.subject()
            self.predicate_object_list(subject)
        self.expect(".")

    def subject(self) -> Union[IRI, BNode]:
        self.skip()
        ch = self.peek()
        if ch == "(":
            raise self.unsupported("collections")
        if ch == "<" and self.peek(2) == "<<":
            raise self.unsupported("quoted triples")
        if ch == "_":
            return self.bnode_label()
        if ch == "[":
            return self.blank_node_property_list()
        return self.iri()

    def predicate_object_list(self, subject: Union[IRI, BNode]) -> None:
        while True:
            predicate = self.verb()
            self.object_list(subject, predicate)
            self.skip()
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
                self.skip()
            if self.peek() in (".", "]", ""):
                return

    def object_list(self, subject, predicate: IRI) -> None:
        while True:
            obj = self.object()
            self.pending.append((subject, predicate, obj))
            self.skip()
            if self.peek() != ",":
                return
            self.pos += 1

    def verb(self) -> IRI:
        self.skip()
        m = _KEYWORD.match(self.text, self.pos)
        if m and m.group(1) == "a":
            self.pos = m.end()
            return RDF_TYPE
        return self.iri()

    def object(self) -> Term:
        self.skip()
        ch = self.peek()
        if ch == "(":
            raise self.unsupported("collections")
        if ch == "<":
            if self.peek(2) == "<<":
                raise self.unsupported("quoted triples")
            return self.iri()
        if ch == "_":
            return self.bnode_label()
        if ch == "[":
            return self.blank_node_property_list()
        if ch in ('"', "'"):
            return self.rdf_literal()
        m = _NUMBER.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            kind = m.lastgroup
            return Literal(m.group(0), datatype=XSD + kind)
        m = _KEYWORD.match(self.text, self.pos)
        if m and m.group(1) in ("true", "false"):
            self.pos = m.end()
            return Literal(m.group(1), datatype=XSD + "boolean")
        return self.iri()

    # -- terms -----------------------------------------------------------

    def iriref(self) -> IRI:
        m = _IRIREF.match(self.text, self.pos)
        if m is None:
            raise self.fail("expected IRI")
        line, col = self.location(self.pos)
        value = unescape_iri(m.group(1), line, col + 1)
        if not is_absolute_iri(value):
            if self.base is None:
                raise self.fail(f"relative IRI <{value}> without a base")
            value = urljoin(self.base, value)
        self.pos = m.end()
        return IRI(value)

    def iri(self) -> IRI:
        if self.peek() == "<":
            return self.iriref()
        m = _PNAME.match(self.text, self.pos)
        if m is None:
            if self.peek() == "{":
                raise self.unsupported("formulae")
            raise self.fail("expected IRI or prefixed name" if self.peek() else "unexpected end of input")
        prefix = m.group(1) or ""
        if prefix not in self.prefixes:
            raise self.fail(f"undeclared prefix '{prefix}:'")
        local = m.group(2) or ""
        if "\\" in local:
            local = _LOCAL_ESCAPE.sub(r"\1", local)
        self.pos = m.end()
        return IRI(self.prefixes[prefix] + local)

    def bnode_label(self) -> BNode:
        m = _BNODE.match(self.text, self.pos)
        if m is None:
            raise self.fail("malformed blank node label")
        self.pos = m.end()
        return BNode(f"{self.scope}_{m.group(1)}")

    def fresh_bnode(self) -> BNode:
        self.anon += 1
        return BNode(f"{self.scope}-{self.anon}")

    def blank_node_property_list(self) -> BNode:
        self.pos += 1  # '['
        node = self.fresh_bnode()
        self.skip()
        if self.peek() == "]":
            self.pos += 1
            return node
        self.predicate_object_list(node)
        self.expect("]")
        return node

    def rdf_literal(self) -> Literal:
        for opener, pattern in _STRINGS:
            if self.text.startswith(opener, self.pos):
                m = pattern.match(self.text, self.pos)
                if m is None:
                    raise self.fail("unterminated string literal")
                line, col = self.location(self.pos)
                lexical = unescape_string(m.group(1), line, col + len(opener))
                self.pos = m.end()
                break
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            return Literal(lexical, datatype=self.iri())
        if self.peek() == "@":
            m = _LANGTAG.match(self.text, self.pos)
            if m is None:
                raise self.fail("empty language tag")
            self.pos = m.end()
            return Literal(lexical, language=m.group(1))
        return Literal(lexical)


def parse_turtle(data: Union[bytes, str], *, lenient: bool = False,
                 errors: Optional[List[RDFParseError]] = None,
                 scope: str = "d0", base: Optional[str] = None,
                 graph: Optional[Graph] = None) -> Graph:
    """Parse a Turtle document into a graph.

    In lenient mode a malformed statement is dropped (parsing resumes after
    the next ``.``) and the error is appended to ``errors``.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise RDFSyntaxError(1, 1, f"input is not UTF-8: {exc}") from None
    if data.startswith("﻿"):
        data = data[1:]
    parser = _TurtleParser(data, scope, base)
    return parser.parse(graph if graph is not None else Graph(), lenient, errors)
