"""RDF substrate: terms, an indexed triple graph, and N-Triples/Turtle readers."""

from pathlib import Path
from typing import List, Optional, Union

from .errors import RDFParseError, RDFSyntaxError, UnsupportedFeature
from .graph import Graph, match
from .ntriples import parse_ntriples, serialize_ntriples
from .terms import BNode, IRI, Literal, Term, Triple, is_absolute_iri, sort_key
from .turtle import parse_turtle

FORMATS = {".nt": "ntriples", ".ttl": "turtle"}


def guess_format(path: Union[str, Path]) -> Optional[str]:
    return FORMATS.get(Path(path).suffix.lower())


def parse(data: Union[bytes, str], fmt: str, *, lenient: bool = False,
          errors: Optional[List[RDFParseError]] = None, scope: str = "d0",
          base: Optional[str] = None, graph: Optional[Graph] = None) -> Graph:
    if fmt == "ntriples":
        return parse_ntriples(data, lenient=lenient, errors=errors, scope=scope, graph=graph)
    if fmt == "turtle":
        return parse_turtle(data, lenient=lenient, errors=errors, scope=scope,
                            base=base, graph=graph)
    raise ValueError(f"unknown RDF format {fmt!r}")


__all__ = [
    "BNode", "FORMATS", "Graph", "IRI", "Literal", "RDFParseError", "RDFSyntaxError",
    "Term", "Triple", "UnsupportedFeature", "guess_format", "is_absolute_iri", "match",
    "parse", "parse_ntriples", "parse_turtle", "serialize_ntriples", "sort_key",
]
