"""Report documents: one entry per quality issue plus vocabulary statistics."""

from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from .model import VocabStats

Entry = Union[str, List[str]]


@dataclass(frozen=True)
class Issue:
    id: str
    label: str
    description: str
    unit: str
    network: bool = False
    # counts at or below this are not a problem (a single component is the ideal)
    tolerated: int = 0


ISSUES: Sequence[Issue] = (
    Issue("omitted_invalid_language_tags", "Omitted or Invalid Language Tags",
          "Resources with label or documentation literals lacking a valid RFC 3066 language tag.",
          "resources"),
    Issue("incomplete_language_coverage", "Incomplete Language Coverage",
          "Concepts not described in every language used somewhere in the vocabulary.",
          "concepts"),
    Issue("undocumented_concepts", "Undocumented Concepts",
          "Concepts without any skos:note or note subproperty.", "concepts"),
    Issue("label_conflicts", "Label Conflicts",
          "Pairs of authoritative concepts sharing a label in the same language.",
          "concept pairs"),
    Issue("orphan_concepts", "Orphan Concepts",
          "Concepts without a semantic relation to any other concept.", "concepts"),
    Issue("weakly_connected_components", "Weakly Connected Components",
          "Clusters of concepts linked by semantic relations; more than one signals fragmentation.",
          "components", tolerated=1),
    Issue("cyclic_hierarchical_relations", "Cyclic Hierarchical Relations",
          "Cycles formed by skos:broader links.", "cycles"),
    Issue("valueless_associative_relations", "Valueless Associative Relations",
          "skos:related pairs that already share a broader or narrower concept.",
          "concept pairs"),
    Issue("solely_transitively_related_concepts", "Solely Transitively Related Concepts",
          "Asserted broaderTransitive/narrowerTransitive links without a broader/narrower chain.",
          "concept pairs"),
    Issue("omitted_top_concepts", "Omitted Top Concepts",
          "Concept schemes without top concepts.", "concept schemes"),
    Issue("top_concept_having_broader", "Top Concept Having Broader Concepts",
          "Top concepts that have a skos:broader concept.", "concepts"),
    Issue("missing_inlinks", "Missing In-Links",
          "Authoritative concepts no triple at the SPARQL endpoint points to.", "concepts",
          network=True),
    Issue("missing_outlinks", "Missing Out-Links",
          "Authoritative concepts not linked to any resource outside the vocabulary.",
          "concepts"),
    Issue("broken_links", "Broken Links",
          "HTTP resources not answering 200 after redirects.", "resources", network=True),
    Issue("undefined_skos_resources", "Undefined SKOS Resources",
          "Deprecated or invented terms in the SKOS namespace.", "resources"),
)

ISSUES_BY_ID: Dict[str, Issue] = {i.id: i for i in ISSUES}
ISSUE_IDS: List[str] = [i.id for i in ISSUES]


class DuplicateIssue(ValueError):
    pass


def _entry_key(entry: Entry):
    return (entry,) if isinstance(entry, str) else tuple(entry)


@dataclass
class IssueResult:
    issue_id: str
    label: str
    affected: List[Entry] = field(default_factory=list)
    count: int = 0
    extrapolated: bool = False
    skipped_reason: Optional[str] = None

    def __post_init__(self):
        self.affected = sorted(
            (e if isinstance(e, str) else [str(x) for x in e] for e in self.affected),
            key=_entry_key)
        if self.skipped_reason is not None:
            self.affected = []
            self.count = 0

    @classmethod
    def of(cls, issue_id: str, affected: Iterable, count: Optional[int] = None,
           extrapolated: bool = False) -> "IssueResult":
        # sets (components) get sorted members; tuples keep their meaningful order
        entries = [str(a) if isinstance(a, str)
                   else sorted(map(str, a)) if isinstance(a, (set, frozenset))
                   else [str(x) for x in a]
                   for a in affected]
        return cls(issue_id, ISSUES_BY_ID[issue_id].label, entries,
                   len(entries) if count is None else count, extrapolated)

    @classmethod
    def skipped(cls, issue_id: str, reason: str) -> "IssueResult":
        return cls(issue_id, ISSUES_BY_ID[issue_id].label, skipped_reason=reason)

    @property
    def found(self) -> bool:
        return self.skipped_reason is None and self.count > ISSUES_BY_ID[self.issue_id].tolerated


@dataclass
class ReportDocument:
    stats: VocabStats
    issues: List[IssueResult]
    tool_version: str
    namespace: str
    run_config: Dict[str, Any] = field(default_factory=dict)
    timestamp: Optional[str] = None

    @property
    def found_issues(self) -> bool:
        return any(r.found for r in self.issues)


def assemble(stats: VocabStats, results: Iterable[IssueResult], metadata: Dict[str, Any],
             enabled: Optional[Iterable[str]] = None) -> ReportDocument:
    """Put results in canonical order, dropping any whose issue is not enabled."""
    by_id: Dict[str, IssueResult] = {}
    for r in results:
        if r.issue_id not in ISSUES_BY_ID:
            raise KeyError(f"unknown issue id {r.issue_id!r}")
        if r.issue_id in by_id:
            raise DuplicateIssue(r.issue_id)
        by_id[r.issue_id] = r
    keep = set(ISSUE_IDS if enabled is None else enabled)
    ordered = [by_id[i] for i in ISSUE_IDS if i in by_id and i in keep]
    return ReportDocument(
        stats=stats,
        issues=ordered,
        tool_version=metadata.get("tool_version", ""),
        namespace=metadata.get("namespace", ""),
        run_config=dict(metadata.get("run_config", {})),
        timestamp=metadata.get("timestamp"),
    )


# -- JSON ---------------------------------------------------------------------

STATS_FIELDS = ("concepts", "authoritative_concepts", "concept_labels",
                "semantic_relations", "concept_schemes")


def _to_dict(doc: ReportDocument) -> Dict[str, Any]:
    return {
        "tool_version": doc.tool_version,
        "timestamp": doc.timestamp,
        "namespace": doc.namespace,
        "run_config": {k: doc.run_config[k] for k in sorted(doc.run_config)},
        "stats": {k: getattr(doc.stats, k) for k in STATS_FIELDS},
        "issues": [
            {
                "issue_id": r.issue_id,
                "label": r.label,
                "count": r.count,
                "extrapolated": r.extrapolated,
                "skipped_reason": r.skipped_reason,
                "affected": r.affected,
            }
            for r in doc.issues
        ],
    }


def render_json(doc: ReportDocument) -> bytes:
    return (json.dumps(_to_dict(doc), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def parse_json(data: Union[bytes, str]) -> ReportDocument:
    raw = json.loads(data)
    return ReportDocument(
        stats=VocabStats(**raw["stats"]),
        issues=[IssueResult(i["issue_id"], i["label"], i["affected"], i["count"],
                            i["extrapolated"], i["skipped_reason"]) for i in raw["issues"]],
        tool_version=raw["tool_version"],
        namespace=raw["namespace"],
        run_config=raw["run_config"],
        timestamp=raw["timestamp"],
    )


def load_schema() -> Dict[str, Any]:
    return json.loads(resources.files("skoscheck").joinpath("data/report.schema.json")
                      .read_text("utf-8"))


# -- text ---------------------------------------------------------------------

STATS_LABELS = {
    "concepts": "Concepts",
    "authoritative_concepts": "Authoritative Concepts",
    "concept_labels": "Concept Labels",
    "semantic_relations": "Semantic Relations",
    "concept_schemes": "Concept Schemes",
}


def render_stats(stats: VocabStats) -> str:
    return "".join(f"{STATS_LABELS[k]}: {getattr(stats, k):,}\n" for k in STATS_FIELDS)


def format_count(result: IssueResult) -> str:
    if result.skipped_reason is not None:
        return f"skipped ({result.skipped_reason})"
    return f"{result.count:,}" + ("*" if result.extrapolated else "")


def render_text(doc: ReportDocument, verbosity: str = "summary") -> str:
    if verbosity not in ("summary", "full"):
        raise ValueError(f"unknown verbosity {verbosity!r}")
    lines = ["SKOS vocabulary quality report", f"Namespace: {doc.namespace}"]
    if doc.timestamp:
        lines.append(f"Generated: {doc.timestamp}")
    out = "\n".join(lines) + "\n\n" + render_stats(doc.stats)
    if not doc.issues:
        return out
    body = []
    for r in doc.issues:
        body.append(f"{r.label}: {format_count(r)}")
        if verbosity == "full":
            for entry in r.affected:
                body.append("    " + (entry if isinstance(entry, str) else ", ".join(entry)))
    if any(r.extrapolated for r in doc.issues):
        body.append("")
        body.append("* extrapolated from a random subsample")
    return out + "\n" + "\n".join(body) + "\n"


__all__ = [
    "DuplicateIssue", "ISSUES", "ISSUES_BY_ID", "ISSUE_IDS", "Issue", "IssueResult",
    "ReportDocument", "assemble", "format_count", "load_schema", "parse_json", "render_json",
    "render_stats", "render_text",
]
