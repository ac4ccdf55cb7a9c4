from __future__ import annotations

from typing import Dict, Iterable, Iterator, Optional, Set

from .terms import IRI, Term, Triple

_EMPTY: frozenset = frozenset()


class Graph:
    """A set of triples indexed by subject, predicate and object.

    Graphs are built by a single writer and treated as read-only afterwards.
    The object index is only built the first time a lookup by object needs
    it, which keeps large derived graphs cheap when nobody asks.
    """

    __slots__ = ("_spo", "_pos", "_osp", "_size")

    def __init__(self, triples: Iterable[Triple] = ()):
        self._spo: Dict[Term, Dict[IRI, Set[Term]]] = {}
        self._pos: Dict[IRI, Dict[Term, Set[Term]]] = {}
        self._osp: Optional[Dict[Term, Dict[Term, Set[IRI]]]] = None
        self._size = 0
        for s, p, o in triples:
            self.add(s, p, o)

    def add(self, s: Term, p: IRI, o: Term) -> bool:
        """Insert a triple; return False if it was already present."""
        by_p = self._spo.get(s)
        if by_p is None:
            by_p = self._spo[s] = {}
        objs = by_p.get(p)
        if objs is None:
            objs = by_p[p] = set()
        elif o in objs:
            return False
        objs.add(o)
        by_o = self._pos.get(p)
        if by_o is None:
            by_o = self._pos[p] = {}
        subs = by_o.get(o)
        if subs is None:
            by_o[o] = {s}
        else:
            subs.add(s)
        if self._osp is not None:
            self._osp_add(s, p, o)
        self._size += 1
        return True

    def add_pairs(self, p: IRI, pairs: Iterable[tuple]) -> int:
        """Insert (subject, object) pairs under one predicate; return how many were new."""
        spo = self._spo
        by_o = self._pos.get(p)
        if by_o is None:
            by_o = self._pos[p] = {}
        osp = self._osp
        added = 0
        for s, o in pairs:
            by_p = spo.get(s)
            if by_p is None:
                by_p = spo[s] = {}
            objs = by_p.get(p)
            if objs is None:
                objs = by_p[p] = {o}
            elif o in objs:
                continue
            else:
                objs.add(o)
            subs = by_o.get(o)
            if subs is None:
                by_o[o] = {s}
            else:
                subs.add(s)
            if osp is not None:
                self._osp_add(s, p, o)
            added += 1
        self._size += added
        return added

    def _osp_add(self, s: Term, p: IRI, o: Term) -> None:
        by_s = self._osp.get(o)
        if by_s is None:
            by_s = self._osp[o] = {}
        preds = by_s.get(s)
        if preds is None:
            by_s[s] = {p}
        else:
            preds.add(p)

    def _object_index(self) -> Dict[Term, Dict[Term, Set[IRI]]]:
        if self._osp is None:
            osp: Dict[Term, Dict[Term, Set[IRI]]] = {}
            for p, by_o in self._pos.items():
                for o, subs in by_o.items():
                    by_s = osp.get(o)
                    if by_s is None:
                        by_s = osp[o] = {}
                    for s in subs:
                        preds = by_s.get(s)
                        if preds is None:
                            by_s[s] = {p}
                        else:
                            preds.add(p)
            self._osp = osp
        return self._osp

    def update(self, triples: Iterable[Triple]) -> None:
        for s, p, o in triples:
            self.add(s, p, o)

    def copy(self) -> "Graph":
        g = Graph()
        g._spo = {s: {p: set(os) for p, os in d.items()} for s, d in self._spo.items()}
        g._pos = {p: {o: set(ss) for o, ss in d.items()} for p, d in self._pos.items()}
        if self._osp is not None:
            g._osp = {o: {s: set(ps) for s, ps in d.items()} for o, d in self._osp.items()}
        g._size = self._size
        return g

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[Triple]:
        for s, by_p in self._spo.items():
            for p, objs in by_p.items():
                for o in objs:
                    yield (s, p, o)

    def __contains__(self, triple: Triple) -> bool:
        s, p, o = triple
        return o in self._spo.get(s, {}).get(p, _EMPTY)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._size == other._size and all(t in other for t in self)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"<Graph with {self._size} triples>"

    def match(self, s: Optional[Term] = None, p: Optional[IRI] = None,
              o: Optional[Term] = None) -> Set[Triple]:
        """Return every triple agreeing with the bound positions."""
        if s is not None:
            by_p = self._spo.get(s)
            if not by_p:
                return set()
            if p is not None:
                objs = by_p.get(p, _EMPTY)
                if o is not None:
                    return {(s, p, o)} if o in objs else set()
                return {(s, p, x) for x in objs}
            if o is not None:
                return {(s, q, o) for q in self._object_index().get(o, {}).get(s, _EMPTY)}
            return {(s, q, x) for q, objs in by_p.items() for x in objs}
        if p is not None:
            by_o = self._pos.get(p)
            if not by_o:
                return set()
            if o is not None:
                return {(x, p, o) for x in by_o.get(o, _EMPTY)}
            return {(x, p, y) for y, subs in by_o.items() for x in subs}
        if o is not None:
            return {(x, q, o) for x, preds in self._object_index().get(o, {}).items()
                    for q in preds}
        return set(self)

    # Fast accessors used by the checks; these avoid building triple tuples.

    def objects(self, s: Term, p: IRI) -> Set[Term]:
        return self._spo.get(s, {}).get(p, _EMPTY)

    def subjects(self, p: IRI, o: Term) -> Set[Term]:
        return self._pos.get(p, {}).get(o, _EMPTY)

    def predicate_map(self, p: IRI) -> Dict[Term, Set[Term]]:
        """Object -> subjects mapping for one predicate."""
        return self._pos.get(p, {})

    def pairs(self, p: IRI) -> Iterator[tuple]:
        """All (subject, object) pairs linked by ``p``."""
        for o, subs in self._pos.get(p, {}).items():
            for s in subs:
                yield (s, o)

    def outgoing(self, s: Term) -> Dict[IRI, Set[Term]]:
        return self._spo.get(s, {})

    def incoming(self, o: Term) -> Dict[Term, Set[IRI]]:
        return self._object_index().get(o, {})

    def count(self, p: IRI) -> int:
        return sum(len(subs) for subs in self._pos.get(p, {}).values())

    def predicates(self) -> Set[IRI]:
        return set(self._pos)

    def subject_terms(self) -> Set[Term]:
        return set(self._spo)

    def object_terms(self) -> Set[Term]:
        if self._osp is not None:
            return set(self._osp)
        return {o for by_o in self._pos.values() for o in by_o}


def match(graph: Graph, s: Optional[Term] = None, p: Optional[IRI] = None,
          o: Optional[Term] = None) -> Set[Triple]:
    return graph.match(s, p, o)
