from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from skoscheck.checks.labeling import (INVALID, OMITTED, InvalidThreshold,
                                       case_sensitive_equality, check_label_conflicts,
                                       check_language_coverage, check_language_tags,
                                       check_undocumented_concepts, iso639_codes,
                                       validate_language_tag)
from skoscheck.model import build_vocabulary
from skoscheck.namespaces import SKOS
from skoscheck.rdf import Graph, IRI, Literal

from oracles import label_conflict_pairs, levenshtein_ratio
from support import EX, vocab


@pytest.mark.parametrize("tag, ok", [
    ("en", True), ("EN", True), ("de-AT", True), ("x-other", True), ("i-klingon", True),
    ("deu", True), ("qaa", True), ("en-GB-oed", True),
    ("de_DE", False), ("english123456", False), ("zz", False), ("", False),
    ("en-", False), ("x", False), ("english", False), ("zz-!!", False), ("en-toolongsubtag", False),
])
def test_validate_language_tag(tag, ok):
    assert validate_language_tag(tag) is ok


def test_grammar_only_accepts_unregistered_primary():
    assert validate_language_tag("zz", grammar_only=True)
    assert not validate_language_tag("de_DE", grammar_only=True)


def test_bundled_code_list():
    codes = iso639_codes()
    assert {"en", "de", "fr", "eng", "ger", "deu", "tlh"} <= codes
    assert all(c.isalpha() and c.islower() and len(c) in (2, 3) for c in codes)


def test_untagged_label_is_omitted():
    findings = check_language_tags(vocab('ex:a a skos:Concept ; skos:prefLabel "Haus" .'))
    assert [(f.resource, f.problem) for f in findings] == [(IRI(EX + "a"), OMITTED)]


def test_bad_tag_is_invalid():
    g = Graph([(IRI(EX + "a"), SKOS.note, Literal("...", language="zz-!!")),
               (IRI(EX + "a"), SKOS.broader, IRI(EX + "b"))])
    findings = check_language_tags(build_vocabulary(g, EX))
    assert [f.problem for f in findings] == [INVALID]


def test_untagged_everywhere_counts_each_literal():
    ttl = "\n".join(f'ex:c{i} a skos:Concept ; skos:prefLabel "L{i}" ; skos:altLabel "A{i}" .'
                    for i in range(5))
    assert len(check_language_tags(vocab(ttl))) == 10


def test_typed_literals_and_other_properties_ignored():
    v = vocab('ex:a a skos:Concept ; skos:notation "1"^^ex:t ; rdfs:comment "c" ; '
              'skos:prefLabel "ok"@x-other .')
    assert check_language_tags(v) == set()


def test_coverage_single_language_is_complete():
    v = vocab('ex:a skos:prefLabel "A"@en ; skos:related ex:b . ex:b skos:prefLabel "B"@EN .')
    assert check_language_coverage(v) == {}


def test_coverage_reports_missing_tags():
    v = vocab("""
        ex:a skos:prefLabel "A"@en , "A"@fr ; skos:related ex:b , ex:c .
        ex:b skos:prefLabel "B"@en ; skos:definition "B"@fr .
        ex:c skos:prefLabel "C"@en .
    """)
    assert check_language_coverage(v) == {IRI(EX + "c"): frozenset({"fr"})}


def test_coverage_everyone_misses_something():
    v = vocab("""
        ex:a skos:prefLabel "A"@en , "A"@de ; skos:related ex:b , ex:c .
        ex:b skos:prefLabel "B"@de , "B"@fr .
        ex:c skos:prefLabel "C"@fr , "C"@en .
    """)
    result = check_language_coverage(v)
    assert len(result) == len(v.concepts) == 3
    assert result[IRI(EX + "a")] == {"fr"}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.sampled_from(["en", "de", "fr"])), min_size=1, max_size=6))
def test_coverage_empty_iff_identical_sets(tag_sets):
    g = Graph()
    for i, tags in enumerate(tag_sets):
        c = IRI(f"{EX}c{i}")
        g.add(c, SKOS.broader, IRI(EX + "root"))
        for t in tags:
            g.add(c, SKOS.prefLabel, Literal(f"{i}", language=t))
    g.add(IRI(EX + "root"), SKOS.prefLabel, Literal("root", language="en"))
    v = build_vocabulary(g, EX)
    all_sets = [set(t) for t in tag_sets] + [{"en"}]
    assert (check_language_coverage(v) == {}) == all(s == all_sets[0] for s in all_sets)


def test_undocumented():
    v = vocab("""
        ex:a a skos:Concept ; skos:definition "d"@en .
        ex:b a skos:Concept ; skos:prefLabel "B"@en .
    """)
    assert check_undocumented_concepts(v) == {IRI(EX + "b")}


def test_undocumented_hand_count():
    ttl = "\n".join(f"ex:c{i} a skos:Concept ." for i in range(10))
    ttl += '\nex:c0 skos:note "n" . ex:c3 skos:scopeNote "s" . ex:c5 skos:example "e" .'
    ttl += '\nex:c9 skos:historyNote "h" .'
    assert len(check_undocumented_concepts(vocab(ttl))) == 6


def test_conflict_case_insensitive():
    v = vocab('ex:x skos:prefLabel "Bank"@en . ex:y skos:altLabel "bank"@en . '
              'ex:x skos:related ex:y .')
    (conflict,) = check_label_conflicts(v)
    assert (conflict.concept_a, conflict.concept_b) == (IRI(EX + "x"), IRI(EX + "y"))
    assert conflict.similarity == 1.0


def test_conflict_needs_same_language():
    v = vocab('ex:x skos:prefLabel "Bank"@en . ex:y skos:altLabel "bank"@de . '
              'ex:x skos:related ex:y .')
    assert check_label_conflicts(v) == set()


def test_untagged_bucket_and_case_sensitive_switch():
    v = vocab('ex:x skos:prefLabel "Bank" . ex:y skos:hiddenLabel "bank" . '
              'ex:x skos:related ex:y .')
    assert len(check_label_conflicts(v)) == 1
    assert check_label_conflicts(v, sim=case_sensitive_equality) == set()


def test_no_self_conflict_and_only_authoritative():
    v = vocab('ex:x skos:prefLabel "Bank"@en ; skos:altLabel "BANK"@en ; '
              'skos:related other:y . other:y skos:prefLabel "bank"@en .')
    assert check_label_conflicts(v) == set()


def test_pref_label_only():
    v = vocab('ex:x skos:prefLabel "Bank"@en . ex:y skos:altLabel "bank"@en . '
              'ex:x skos:related ex:y .')
    assert check_label_conflicts(v, pref_label_only=True) == set()


@pytest.mark.parametrize("bad", [0, -0.5, 1.01])
def test_threshold_range(bad):
    with pytest.raises(InvalidThreshold):
        check_label_conflicts(vocab("ex:a a skos:Concept ."), threshold=bad)


def _random_label_vocab(rng, n_labels):
    words = ["bank", "Bank", "river", "BANK", "shore", "banks", "rive", "Shore"]
    langs = ["en", "EN", "de", None]
    props = [SKOS.prefLabel, SKOS.altLabel, SKOS.hiddenLabel]
    g = Graph()
    labels = []
    for _ in range(n_labels):
        c = IRI(f"{EX}c{rng.randrange(12)}")
        text, lang = rng.choice(words), rng.choice(langs)
        g.add(c, rng.choice(props), Literal(text, language=lang))
        g.add(c, SKOS.broader, IRI(EX + "top"))
        labels.append((c, text, lang))
    return build_vocabulary(g, EX), labels


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 100))
def test_default_conflicts_match_group_by_oracle(seed, n):
    v, labels = _random_label_vocab(random.Random(seed), n)
    found = {frozenset((c.concept_a, c.concept_b)) for c in check_label_conflicts(v)}
    assert found == label_conflict_pairs(labels)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 60),
       st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_threshold_monotone_for_edit_ratio(seed, n, t1, t2):
    lo, hi = sorted((t1, t2))
    v, _ = _random_label_vocab(random.Random(seed), n)
    pairs = lambda t: {(c.concept_a, c.concept_b)
                       for c in check_label_conflicts(v, t, levenshtein_ratio)}
    strict, loose = pairs(hi), pairs(lo)
    assert strict <= loose
    for c in check_label_conflicts(v, lo, levenshtein_ratio):
        assert c.concept_a < c.concept_b
        assert c.similarity >= lo
