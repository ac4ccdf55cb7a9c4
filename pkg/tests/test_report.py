from __future__ import annotations

import json

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from skoscheck.model import VocabStats
from skoscheck.report import (ISSUE_IDS, DuplicateIssue, IssueResult, assemble,
                              load_schema, parse_json, render_json, render_text)

STATS = VocabStats(1234, 1000, 2500, 3000, 2)
META = {"tool_version": "0.1.0", "namespace": "http://ex.org/v/",
        "run_config": {"timeout": 30.0, "subsample_rate": 1.0}}


def validate(data: bytes):
    jsonschema.validate(json.loads(data), load_schema())


def test_zero_results():
    doc = assemble(STATS, [], META)
    assert doc.issues == []
    assert render_text(doc) == (
        "SKOS vocabulary quality report\n"
        "Namespace: http://ex.org/v/\n"
        "\n"
        "Concepts: 1,234\n"
        "Authoritative Concepts: 1,000\n"
        "Concept Labels: 2,500\n"
        "Semantic Relations: 3,000\n"
        "Concept Schemes: 2\n")


def test_canonical_order():
    results = [IssueResult.of(i, []) for i in reversed(ISSUE_IDS)]
    doc = assemble(STATS, results, META)
    assert [r.issue_id for r in doc.issues] == ISSUE_IDS


def test_disabled_issue_omitted():
    results = [IssueResult.of("orphan_concepts", ["x"]), IssueResult.of("broken_links", [])]
    doc = assemble(STATS, results, META, enabled=["broken_links"])
    assert [r.issue_id for r in doc.issues] == ["broken_links"]


def test_skipped_network_check():
    doc = assemble(STATS, [IssueResult.skipped("missing_inlinks", "offline")], META)
    (r,) = doc.issues
    assert r.skipped_reason == "offline" and r.count == 0 and r.affected == []
    assert not doc.found_issues
    validate(render_json(doc))


def test_duplicates_rejected():
    with pytest.raises(DuplicateIssue):
        assemble(STATS, [IssueResult.of("orphan_concepts", []),
                         IssueResult.of("orphan_concepts", [])], META)


def test_entries_sorted_and_counted():
    r = IssueResult.of("orphan_concepts", ["http://b", "http://a"])
    assert r.affected == ["http://a", "http://b"] and r.count == 2
    pair = IssueResult.of("solely_transitively_related_concepts", [("http://z", "http://a")])
    assert pair.affected == [["http://z", "http://a"]]
    group = IssueResult.of("weakly_connected_components", [frozenset({"http://z", "http://a"})])
    assert group.affected == [["http://a", "http://z"]]


def test_single_component_not_an_issue():
    one = IssueResult.of("weakly_connected_components", [frozenset({"a", "b"})])
    two = IssueResult.of("weakly_connected_components", [frozenset({"a", "b"}),
                                                          frozenset({"c", "d"})])
    assert not one.found and two.found


def test_extrapolated_json_and_text():
    r = IssueResult.of("missing_inlinks", ["http://ex.org/v/c1"], count=171980, extrapolated=True)
    doc = assemble(STATS, [r], META)
    data = json.loads(render_json(doc))
    assert data["issues"][0]["extrapolated"] is True
    assert data["issues"][0]["count"] == 171980
    line = [l for l in render_text(doc).splitlines() if l.startswith("Missing In-Links")][0]
    assert line.endswith("171,980*")
    assert "* extrapolated from a random subsample" in render_text(doc)


def test_full_verbosity_lists_entries():
    r = IssueResult.of("undocumented_concepts", ["http://ex.org/v/a", "http://ex.org/v/b",
                                                 "http://ex.org/v/c"])
    text = render_text(assemble(STATS, [r], META), "full")
    assert len([l for l in text.splitlines() if l.startswith("    ")]) == 3
    assert "Undocumented Concepts: 3\n" in render_text(assemble(STATS, [r], META))


def test_unknown_verbosity():
    with pytest.raises(ValueError):
        render_text(assemble(STATS, [], META), "loud")


def test_schema_rejects_malformed():
    good = json.loads(render_json(assemble(STATS, [IssueResult.of("label_conflicts",
                                                                   [("a", "b")])], META)))
    jsonschema.validate(good, load_schema())
    bad = json.loads(json.dumps(good))
    bad["issues"][0]["affected"] = ["a"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, load_schema())
    bad = json.loads(json.dumps(good))
    bad["issues"][0]["issue_id"] = "made_up"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, load_schema())


_uri = st.text("abcdefghij", min_size=1, max_size=5).map(lambda s: "http://ex.org/" + s)


@st.composite
def documents(draw):
    results = []
    for issue_id in draw(st.lists(st.sampled_from(ISSUE_IDS), unique=True)):
        if issue_id in ("missing_inlinks", "broken_links") and draw(st.booleans()):
            results.append(IssueResult.skipped(issue_id, draw(st.sampled_from(
                ["offline", "no SPARQL endpoint configured"]))))
            continue
        if issue_id in ("label_conflicts", "valueless_associative_relations",
                        "solely_transitively_related_concepts"):
            entries = draw(st.lists(st.tuples(_uri, _uri), unique=True, max_size=4))
        elif issue_id in ("weakly_connected_components", "cyclic_hierarchical_relations"):
            entries = draw(st.lists(st.frozensets(_uri, min_size=1, max_size=4), unique=True,
                                    max_size=3))
        else:
            entries = draw(st.lists(_uri, unique=True, max_size=5))
        extrapolated = issue_id in ("missing_inlinks", "broken_links") and draw(st.booleans())
        count = draw(st.integers(0, 10**6)) if extrapolated else None
        results.append(IssueResult.of(issue_id, entries, count, extrapolated))
    stats = VocabStats(*draw(st.lists(st.integers(0, 10**7), min_size=5, max_size=5)))
    stamp = draw(st.one_of(st.none(), st.just("2026-01-01T00:00:00+00:00")))
    return assemble(stats, results, dict(META, timestamp=stamp))


@settings(max_examples=100, deadline=None)
@given(documents())
def test_json_round_trip_and_schema(doc):
    data = render_json(doc)
    assert render_json(doc) == data
    validate(data)
    again = parse_json(data)
    assert again == doc
    assert render_json(again) == data


@settings(max_examples=50, deadline=None)
@given(documents())
def test_text_marks_exactly_the_extrapolated(doc):
    text = render_text(doc)
    for r in doc.issues:
        line = next(l for l in text.splitlines() if l.startswith(r.label + ":"))
        assert line.endswith("*") == r.extrapolated
        if not r.extrapolated and r.skipped_reason is None:
            assert r.count == len(r.affected)
