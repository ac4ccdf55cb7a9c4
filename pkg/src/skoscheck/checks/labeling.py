"""Labeling and documentation checks."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..model import Vocabulary
from ..namespaces import DOC_PROPS, LABEL_PROPS, LABELING_PROPS, SKOS
from ..rdf import IRI, Literal, Term

OMITTED = "omitted"
INVALID = "invalid"

_RFC3066 = re.compile(r"[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*\Z")

Similarity = Callable[[Literal, Literal], float]


@lru_cache(maxsize=None)
def iso639_codes() -> FrozenSet[str]:
    text = resources.files("skoscheck").joinpath("data/iso639.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines()
                     if line.strip() and not line.startswith("#"))


@lru_cache(maxsize=4096)
def validate_language_tag(tag: str, grammar_only: bool = False) -> bool:
    """RFC 3066 syntax, plus a registered ISO 639 primary subtag.

    Private-use (``x-``) and IANA (``i-``) tags are accepted on syntax alone.
    """
    if not _RFC3066.match(tag):
        return False
    if grammar_only:
        return True
    primary = tag.split("-", 1)[0].lower()
    if primary in ("x", "i"):
        return "-" in tag
    return primary in iso639_codes()


@dataclass(frozen=True)
class LanguageTagFinding:
    resource: Term
    property: IRI
    literal: Literal
    problem: str


def check_language_tags(v: Vocabulary, grammar_only: bool = False) -> Set[LanguageTagFinding]:
    findings = set()
    for p in LABELING_PROPS | DOC_PROPS:
        for s, o in v.asserted.pairs(p):
            if not isinstance(o, Literal) or not o.is_plain:
                continue
            if o.language is None:
                findings.add(LanguageTagFinding(s, p, o, OMITTED))
            elif not validate_language_tag(o.language, grammar_only):
                findings.add(LanguageTagFinding(s, p, o, INVALID))
    return findings


def concept_languages(v: Vocabulary) -> Dict[Term, Set[str]]:
    """Lowercased language tags on each concept's label and documentation literals."""
    tags: Dict[Term, Set[str]] = {c: set() for c in v.concepts}
    for p in LABELING_PROPS | DOC_PROPS:
        for s, o in v.asserted.pairs(p):
            if isinstance(o, Literal) and o.lang is not None and s in tags:
                tags[s].add(o.lang)
    return tags


def check_language_coverage(v: Vocabulary) -> Dict[Term, FrozenSet[str]]:
    tags = concept_languages(v)
    everything: Set[str] = set().union(*tags.values()) if tags else set()
    return {c: frozenset(everything - own) for c, own in tags.items() if own != everything}


def check_undocumented_concepts(v: Vocabulary) -> Set[Term]:
    documented = set()
    for p in DOC_PROPS:
        for s, _ in v.asserted.pairs(p):
            documented.add(s)
    return set(v.concepts) - documented


class InvalidThreshold(ValueError):
    pass


@dataclass(frozen=True)
class LabelConflict:
    concept_a: IRI
    concept_b: IRI
    label_a: Literal
    label_b: Literal
    similarity: float


def case_insensitive_equality(a: Literal, b: Literal) -> float:
    return 1.0 if a.lexical.lower() == b.lexical.lower() else 0.0


def case_sensitive_equality(a: Literal, b: Literal) -> float:
    return 1.0 if a.lexical == b.lexical else 0.0


def _labels(v: Vocabulary, properties: Iterable[IRI]) -> Dict[Optional[str], List[Tuple[IRI, Literal]]]:
    """Authoritative-concept labels grouped into language buckets (None = untagged)."""
    buckets: Dict[Optional[str], List[Tuple[IRI, Literal]]] = defaultdict(list)
    ac = v.authoritative_concepts
    for p in properties:
        for s, o in v.asserted.pairs(p):
            if s in ac and isinstance(o, Literal):
                buckets[o.lang].append((s, o))
    return buckets


def _better(candidate: LabelConflict, current: Optional[LabelConflict]) -> bool:
    if current is None:
        return True
    if candidate.similarity != current.similarity:
        return candidate.similarity > current.similarity
    return ((candidate.label_a.n3(), candidate.label_b.n3())
            < (current.label_a.n3(), current.label_b.n3()))


def check_label_conflicts(v: Vocabulary, threshold: float = 1.0,
                          sim: Optional[Similarity] = None,
                          pref_label_only: bool = False) -> Set[LabelConflict]:
    """Pairs of authoritative concepts with similar labels in one language bucket.

    Each pair is reported once, with its most similar label combination.
    Without a custom ``sim`` the default (case-insensitive equality) is
    evaluated by grouping instead of pairwise comparison.
    """
    if not 0 < threshold <= 1:
        raise InvalidThreshold(f"threshold must lie in (0, 1], got {threshold}")
    properties = [SKOS.prefLabel] if pref_label_only else sorted(LABEL_PROPS)
    buckets = _labels(v, properties)
    best: Dict[Tuple[IRI, IRI], LabelConflict] = {}

    def offer(c1: IRI, l1: Literal, c2: IRI, l2: Literal, score: float) -> None:
        if c1 == c2 or score < threshold:
            return
        if c2 < c1:
            c1, l1, c2, l2 = c2, l2, c1, l1
        found = LabelConflict(c1, c2, l1, l2, score)
        if _better(found, best.get((c1, c2))):
            best[(c1, c2)] = found

    if sim is None or sim is case_insensitive_equality:
        for entries in buckets.values():
            groups: Dict[str, List[Tuple[IRI, Literal]]] = defaultdict(list)
            for concept, label in entries:
                groups[label.lexical.lower()].append((concept, label))
            for group in groups.values():
                if len(group) < 2:
                    continue
                group.sort(key=lambda e: (e[0], e[1].n3()))
                for i, (c1, l1) in enumerate(group):
                    for c2, l2 in group[i + 1:]:
                        offer(c1, l1, c2, l2, 1.0)
    else:
        for entries in buckets.values():
            entries.sort(key=lambda e: (e[0], e[1].n3()))
            for i, (c1, l1) in enumerate(entries):
                for c2, l2 in entries[i + 1:]:
                    if c1 != c2:
                        offer(c1, l1, c2, l2, sim(l1, l2))
    return set(best.values())
