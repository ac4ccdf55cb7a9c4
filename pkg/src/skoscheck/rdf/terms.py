"""RDF terms.

IRIs and blank nodes are ``str`` subclasses so that graphs stay cheap at the
size of real vocabularies. Blank node values always carry the ``_:`` prefix,
which can never begin an absolute IRI, so the two never compare equal.
"""

from __future__ import annotations

import re
from typing import Optional, Tuple, Union

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


class IRI(str):
    __slots__ = ()

    def n3(self) -> str:
        return "<" + _escape_iri(self) + ">"

    def __repr__(self) -> str:
        return f"IRI({str.__repr__(self)})"


class BNode(str):
    __slots__ = ()

    def __new__(cls, label: str) -> "BNode":
        if not label.startswith("_:"):
            label = "_:" + label
        return str.__new__(cls, label)

    @property
    def label(self) -> str:
        return self[2:]

    def n3(self) -> str:
        return str(self)

    def __repr__(self) -> str:
        return f"BNode({str.__repr__(self)})"


class Literal:
    """A literal with an optional language tag or datatype (never both).

    The language tag is kept as written in ``language``; equality and hashing
    use the lowercased form in ``lang``.
    """

    __slots__ = ("lexical", "language", "datatype", "lang", "_hash")

    def __init__(self, lexical: str, language: Optional[str] = None,
                 datatype: Optional[str] = None):
        if language is not None and datatype is not None:
            raise ValueError("a literal cannot have both a language tag and a datatype")
        self.lexical = lexical
        self.language = language
        self.lang = language.lower() if language is not None else None
        self.datatype = IRI(datatype) if datatype is not None else None
        self._hash = hash((lexical, self.lang, self.datatype))

    @property
    def is_plain(self) -> bool:
        return self.datatype is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Literal):
            return NotImplemented
        return (self.lexical == other.lexical and self.lang == other.lang
                and self.datatype == other.datatype)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Literal") -> bool:
        return self.n3() < other.n3()

    def n3(self) -> str:
        out = '"' + escape_string(self.lexical) + '"'
        if self.language is not None:
            return out + "@" + self.language
        if self.datatype is not None:
            return out + "^^" + self.datatype.n3()
        return out

    def __str__(self) -> str:
        return self.n3()

    def __repr__(self) -> str:
        extra = ""
        if self.language is not None:
            extra = f", language={self.language!r}"
        elif self.datatype is not None:
            extra = f", datatype={str(self.datatype)!r}"
        return f"Literal({self.lexical!r}{extra})"


Term = Union[IRI, BNode, Literal]
Triple = Tuple[Union[IRI, BNode], IRI, Term]


def is_absolute_iri(value: str) -> bool:
    return _SCHEME.match(value) is not None


_STRING_ESCAPES = {
    "\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t",
    "\b": "\\b", "\f": "\\f",
}


def escape_string(value: str) -> str:
    if not any(ch in value for ch in _STRING_ESCAPES):
        return value
    return "".join(_STRING_ESCAPES.get(ch, ch) for ch in value)


def _escape_iri(value: str) -> str:
    out = []
    for ch in value:
        if ch in '<>"{}|^`\\' or ord(ch) <= 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def sort_key(term: Term) -> str:
    """Stable textual key used wherever terms are reported in order."""
    if isinstance(term, Literal):
        return term.n3()
    return str(term)
