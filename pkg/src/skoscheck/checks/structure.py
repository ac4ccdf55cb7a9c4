"""Structural checks over the semantic-relation graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Set, Tuple

from ..model import Vocabulary
from ..namespaces import SKOS
from ..rdf import Literal, Term, sort_key


def find_orphan_concepts(v: Vocabulary) -> Set[Term]:
    connected = v.semantic_neighbours
    return {c for c in v.concepts if c not in connected}


@dataclass(frozen=True)
class ComponentReport:
    components: Tuple[FrozenSet[Term], ...]

    def __len__(self) -> int:
        return len(self.components)


def connected_components(adj: Mapping[Term, Iterable[Term]]) -> List[Set[Term]]:
    seen: Set[Term] = set()
    out = []
    for start in adj:
        if start in seen:
            continue
        seen.add(start)
        component = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in adj[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    component.add(nxt)
                    stack.append(nxt)
        out.append(component)
    return out


def find_components(v: Vocabulary) -> ComponentReport:
    comps = connected_components(v.semantic_neighbours)
    comps.sort(key=lambda c: (-len(c), min(map(sort_key, c))))
    return ComponentReport(tuple(frozenset(c) for c in comps))


@dataclass(frozen=True)
class HierarchyCycle:
    """Concepts lying on a common skos:broader cycle.

    A single member means a reflexive broader statement. Larger cycles list
    the members of a strongly connected component in sorted order, not a
    walk through it.
    """

    concepts: Tuple[Term, ...]


def strongly_connected_components(succ: Mapping[Term, Iterable[Term]]) -> Iterator[Set[Term]]:
    """Tarjan's algorithm, iterative so that deep hierarchies do not hit the recursion limit."""
    index: Dict[Term, int] = {}
    low: Dict[Term, int] = {}
    on_stack: Set[Term] = set()
    stack: List[Term] = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, children = work[-1]
            advanced = False
            for child in children:
                if child not in index:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(succ.get(child, ()))))
                    advanced = True
                    break
                if child in on_stack and index[child] < low[node]:
                    low[node] = index[child]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                component = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                yield component


def find_hierarchy_cycles(v: Vocabulary) -> Set[HierarchyCycle]:
    succ: Dict[Term, Set[Term]] = {}
    cycles = set()
    for s, o in v.entailed.pairs(SKOS.broader):
        if isinstance(o, Literal):
            continue
        if s == o:
            cycles.add(HierarchyCycle((s,)))
        else:
            succ.setdefault(s, set()).add(o)
    for component in strongly_connected_components(succ):
        if len(component) > 1:
            cycles.add(HierarchyCycle(tuple(sorted(component, key=sort_key))))
    return cycles


def _ordered(a: Term, b: Term) -> Tuple[Term, Term]:
    return (a, b) if sort_key(a) <= sort_key(b) else (b, a)


def find_valueless_associative_relations(v: Vocabulary) -> Set[Tuple[Term, Term]]:
    """Related concept pairs that also share a direct broader or narrower concept.

    Pairs are returned in sorted order.
    """
    g = v.entailed
    out = set()
    for a, b in g.pairs(SKOS.related):
        if a == b or isinstance(b, Literal):
            continue
        pair = _ordered(a, b)
        if pair in out:
            continue
        if (g.objects(a, SKOS.broader) & g.objects(b, SKOS.broader)
                or g.objects(a, SKOS.narrower) & g.objects(b, SKOS.narrower)):
            out.add(pair)
    return out


def find_solely_transitive_pairs(v: Vocabulary) -> Set[Tuple[Term, Term]]:
    """Asserted transitive hierarchy links not backed by an asserted broader chain.

    narrowerTransitive statements are flipped, so every pair reads
    (narrower concept, broader concept).
    """
    g = v.asserted
    claimed = set(g.pairs(SKOS.broaderTransitive))
    claimed.update((o, s) for s, o in g.pairs(SKOS.narrowerTransitive)
                   if not isinstance(o, Literal))
    if not claimed:
        return set()
    up: Dict[Term, Set[Term]] = {}
    for s, o in g.pairs(SKOS.broader):
        up.setdefault(s, set()).add(o)
    for s, o in g.pairs(SKOS.narrower):
        if not isinstance(o, Literal):
            up.setdefault(o, set()).add(s)

    reach: Dict[Term, Set[Term]] = {}

    def ancestors(start: Term) -> Set[Term]:
        if start not in reach:
            seen: Set[Term] = set()
            stack = list(up.get(start, ()))
            while stack:
                node = stack.pop()
                if node not in seen:
                    seen.add(node)
                    stack.extend(up.get(node, ()))
            reach[start] = seen
        return reach[start]

    concepts = v.concepts
    return {(a, b) for a, b in claimed
            if a in concepts and b in concepts and b not in ancestors(a)}


def _top_concept_links(v: Vocabulary) -> Iterator[Tuple[Term, Term]]:
    """(scheme, top concept) pairs from entailed hasTopConcept/topConceptOf."""
    g = v.entailed
    yield from g.pairs(SKOS.hasTopConcept)
    for concept, scheme in g.pairs(SKOS.topConceptOf):
        yield scheme, concept


def find_schemes_without_top_concepts(v: Vocabulary) -> Set[Term]:
    with_top = {scheme for scheme, _ in _top_concept_links(v)}
    return set(v.concept_schemes) - with_top


def find_top_concepts_with_broader(v: Vocabulary) -> Set[Term]:
    g = v.entailed
    return {concept for _, concept in _top_concept_links(v)
            if not isinstance(concept, Literal) and g.objects(concept, SKOS.broader)}
