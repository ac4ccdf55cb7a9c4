"""The vocabulary model: resources, concepts, relations and schemes of a SKOS graph.

Checks never look at the raw parse directly. They read a :class:`Vocabulary`,
which keeps the asserted graph next to its closure under a fixed set of SKOS
axioms (subproperties, inverses, symmetric and transitive properties, and the
domain/range typing of SKOS properties).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import chain
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Set, Tuple

from .namespaces import DOC_PROPS, LABEL_PROPS, RDF_TYPE, RDFS_LABEL, SEMANTIC_PROPS, SKOS
from .rdf import Graph, IRI, Literal, Term, Triple

Pairs = Set[Tuple[Term, Term]]


class NoConcepts(ValueError):
    """No namespace can be inferred because the graph declares no IRI concepts."""


def _inverse(pairs: Iterable[Tuple[Term, Term]]) -> Pairs:
    return {(o, s) for s, o in pairs if not isinstance(o, Literal)}


def _symmetric(pairs: Pairs) -> Pairs:
    return pairs | _inverse(pairs)


def _transitive(pairs: Pairs) -> Pairs:
    succ: Dict[Term, Set[Term]] = {}
    for s, o in pairs:
        succ.setdefault(s, set()).add(o)
    closure: Pairs = set()
    for start in succ:
        seen: Set[Term] = set()
        stack = list(succ[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            nxt = succ.get(node)
            if nxt:
                stack.extend(nxt)
        closure.update((start, node) for node in seen)
    return closure


def entail(asserted: Graph) -> Graph:
    """Return the closure of ``asserted`` under the SKOS rule set.

    Properties are derived in dependency order (each one only from
    properties strictly below it in the hierarchy), so a single pass
    reaches the fixpoint.
    """
    def have(p: IRI) -> Pairs:
        return set(asserted.pairs(p))

    broader = have(SKOS.broader) | _inverse(have(SKOS.narrower))
    # inverses cannot carry literal objects, so literal-valued statements of
    # the inverse property are added back explicitly
    narrower = _inverse(broader) | have(SKOS.narrower)
    broader_t = _transitive(broader | have(SKOS.broaderTransitive)
                            | _inverse(have(SKOS.narrowerTransitive)))
    narrower_t = _inverse(broader_t)
    # resource-valued narrower statements are already covered by the inverse
    # closure; only literal-valued ones can add anything
    dangling = {(s, o) for s, o in narrower | have(SKOS.narrowerTransitive)
                if isinstance(o, Literal)}
    if dangling:
        narrower_t = _transitive(narrower_t | dangling)
    related = _symmetric(have(SKOS.related))
    broad_match = have(SKOS.broadMatch) | _inverse(have(SKOS.narrowMatch))
    narrow_match = _inverse(broad_match) | have(SKOS.narrowMatch)
    exact = _transitive(_symmetric(have(SKOS.exactMatch)))
    close = _symmetric(have(SKOS.closeMatch)) | exact
    related_match = _symmetric(have(SKOS.relatedMatch))
    mapping = (have(SKOS.mappingRelation) | close | broad_match | narrow_match
               | related_match)
    semantic = (have(SKOS.semanticRelation), broader_t, narrower_t, related, mapping)
    has_top = have(SKOS.hasTopConcept) | _inverse(have(SKOS.topConceptOf))
    top_of = _inverse(has_top) | have(SKOS.topConceptOf)
    in_scheme = have(SKOS.inScheme) | top_of

    derived = {
        SKOS.broader: broader, SKOS.narrower: narrower,
        SKOS.broaderTransitive: broader_t, SKOS.narrowerTransitive: narrower_t,
        SKOS.related: related, SKOS.broadMatch: broad_match,
        SKOS.narrowMatch: narrow_match, SKOS.exactMatch: exact,
        SKOS.closeMatch: close, SKOS.relatedMatch: related_match,
        SKOS.mappingRelation: mapping, SKOS.semanticRelation: chain(*semantic),
        SKOS.hasTopConcept: has_top, SKOS.topConceptOf: top_of,
        SKOS.inScheme: in_scheme,
    }
    out = asserted.copy()
    for p, pairs in derived.items():
        out.add_pairs(p, pairs)
    for p in LABEL_PROPS:
        out.add_pairs(RDFS_LABEL, asserted.pairs(p))
    for p in DOC_PROPS - {SKOS.note}:
        out.add_pairs(SKOS.note, asserted.pairs(p))

    add = out.add

    concept, scheme = SKOS.Concept, SKOS.ConceptScheme
    endpoints = set()
    for s, o in out.pairs(SKOS.semanticRelation):
        endpoints.add(s)
        if not isinstance(o, Literal):
            endpoints.add(o)
    out.add_pairs(RDF_TYPE, ((c, concept) for c in endpoints))
    for s, o in has_top:
        add(s, RDF_TYPE, scheme)
        if not isinstance(o, Literal):
            add(o, RDF_TYPE, concept)
    for s, o in top_of:
        add(s, RDF_TYPE, concept)
        if not isinstance(o, Literal):
            add(o, RDF_TYPE, scheme)
    for _, o in in_scheme:
        if not isinstance(o, Literal):
            add(o, RDF_TYPE, scheme)
    return out


def _separator_prefixes(namespace: str) -> Iterator[str]:
    for i, ch in enumerate(namespace):
        if ch in "/#":
            yield namespace[:i + 1]


def namespace_of(iri: str) -> str:
    cut = max(iri.rfind("/"), iri.rfind("#"))
    return iri[:cut + 1]


def majority_namespace(concepts: Iterable[Term]) -> str:
    """Longest '/'- or '#'-terminated prefix shared by more than half the IRIs."""
    counts = Counter(namespace_of(c) for c in concepts if isinstance(c, IRI))
    total = sum(counts.values())
    if not total:
        raise NoConcepts("graph contains no IRI-identified skos:Concept")
    covered: Counter = Counter()
    for ns, n in counts.items():
        for prefix in _separator_prefixes(ns):
            covered[prefix] += n
    best = ""
    for prefix, n in covered.items():
        if 2 * n > total and len(prefix) > len(best):
            best = prefix
    return best


def _typed(graph: Graph, cls: IRI) -> Set[Term]:
    return set(graph.subjects(RDF_TYPE, cls))


def infer_namespace(graph: Graph) -> str:
    return majority_namespace(_typed(entail(graph), SKOS.Concept))


@dataclass(frozen=True, eq=False)
class Vocabulary:
    asserted: Graph
    entailed: Graph
    namespace: str
    resources: FrozenSet[Term]
    concepts: FrozenSet[Term]
    authoritative_concepts: FrozenSet[IRI]
    literals: FrozenSet[Literal]
    concept_schemes: FrozenSet[Term]

    @cached_property
    def semantic_neighbours(self) -> Dict[Term, Set[Term]]:
        """Undirected adjacency between distinct concepts over skos:semanticRelation."""
        concepts = self.concepts
        adj: Dict[Term, Set[Term]] = {}
        for o, subs in self.entailed.predicate_map(SKOS.semanticRelation).items():
            if o not in concepts:
                continue
            for s in subs:
                if s != o and s in concepts:
                    adj.setdefault(s, set()).add(o)
                    adj.setdefault(o, set()).add(s)
        return adj

    @cached_property
    def semantic_relations(self) -> FrozenSet[Triple]:
        """Entailed triples under skos:semanticRelation between two concepts."""
        concepts = self.concepts
        out = set()
        for p in SEMANTIC_PROPS:
            for s, o in self.entailed.pairs(p):
                if s in concepts and o in concepts:
                    out.add((s, p, o))
        return frozenset(out)

    def is_authoritative(self, term: Term) -> bool:
        return isinstance(term, IRI) and term.startswith(self.namespace)


def build_vocabulary(graph: Graph, namespace: Optional[str] = None) -> Vocabulary:
    entailed = entail(graph)
    concepts = frozenset(_typed(entailed, SKOS.Concept))
    if namespace is None:
        namespace = majority_namespace(concepts)
    resources = set(graph.predicates())
    literals = set()
    for term in graph.subject_terms():
        resources.add(term)
    for term in graph.object_terms():
        if isinstance(term, Literal):
            if term.datatype is None:
                literals.add(term)
        else:
            resources.add(term)
    return Vocabulary(
        asserted=graph,
        entailed=entailed,
        namespace=namespace,
        resources=frozenset(resources),
        concepts=concepts,
        authoritative_concepts=frozenset(
            c for c in concepts if isinstance(c, IRI) and c.startswith(namespace)),
        literals=frozenset(literals),
        concept_schemes=frozenset(_typed(entailed, SKOS.ConceptScheme)),
    )


@dataclass(frozen=True)
class VocabStats:
    concepts: int = 0
    authoritative_concepts: int = 0
    concept_labels: int = 0
    semantic_relations: int = 0
    concept_schemes: int = 0


def compute_stats(v: Vocabulary) -> VocabStats:
    labels = 0
    for p in LABEL_PROPS:
        for s, _ in v.asserted.pairs(p):
            if s in v.concepts:
                labels += 1
    return VocabStats(
        concepts=len(v.concepts),
        authoritative_concepts=len(v.authoritative_concepts),
        concept_labels=labels,
        semantic_relations=sum(v.asserted.count(p) for p in SEMANTIC_PROPS),
        concept_schemes=len(v.concept_schemes),
    )


def empty_vocabulary(namespace: str) -> Vocabulary:
    return build_vocabulary(Graph(), namespace)


__all__ = [
    "NoConcepts", "Vocabulary", "VocabStats", "build_vocabulary", "compute_stats",
    "empty_vocabulary", "entail", "infer_namespace", "majority_namespace", "namespace_of",
]
