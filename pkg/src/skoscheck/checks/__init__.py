"""The fifteen quality checks and a runner that turns them into report entries."""

from __future__ import annotations

import logging
from typing import Callable, Dict, Iterable, List, Optional

import requests

from ..model import Vocabulary
from ..report import ISSUE_IDS, ISSUES_BY_ID, IssueResult
from .labeling import (LabelConflict, LanguageTagFinding, case_insensitive_equality,
                       case_sensitive_equality, check_label_conflicts, check_language_coverage,
                       check_language_tags, check_undocumented_concepts, validate_language_tag)
from .linkeddata import (EndpointUnreachable, LinkProbeResult, NetworkConfig,
                         find_missing_inlinks, find_missing_outlinks,
                         find_undefined_skos_resources, probe_links)
from .structure import (ComponentReport, HierarchyCycle, find_components,
                        find_hierarchy_cycles, find_orphan_concepts,
                        find_schemes_without_top_concepts, find_solely_transitive_pairs,
                        find_top_concepts_with_broader, find_valueless_associative_relations)

log = logging.getLogger(__name__)


def run_checks(v: Vocabulary, issues: Optional[Iterable[str]] = None, *,
               threshold: float = 1.0, case_sensitive: bool = False,
               pref_label_only: bool = False, grammar_only: bool = False,
               offline: bool = False, network: Optional[NetworkConfig] = None,
               session: Optional[requests.Session] = None) -> List[IssueResult]:
    """Run the selected checks (all by default) in canonical order.

    Network checks are reported as skipped when ``offline`` is set, when no
    endpoint is configured, or when the endpoint cannot be reached.
    """
    network = network or NetworkConfig()
    selected = list(ISSUE_IDS) if issues is None else [i for i in ISSUE_IDS if i in set(issues)]
    sim = case_sensitive_equality if case_sensitive else case_insensitive_equality

    def language_tags() -> IssueResult:
        findings = check_language_tags(v, grammar_only=grammar_only)
        return IssueResult.of("omitted_invalid_language_tags", {f.resource for f in findings})

    def label_conflicts() -> IssueResult:
        conflicts = check_label_conflicts(v, threshold, sim, pref_label_only)
        return IssueResult.of("label_conflicts", [(c.concept_a, c.concept_b) for c in conflicts])

    def components() -> IssueResult:
        return IssueResult.of("weakly_connected_components", find_components(v).components)

    def cycles() -> IssueResult:
        return IssueResult.of("cyclic_hierarchical_relations",
                              [c.concepts for c in find_hierarchy_cycles(v)])

    def missing_inlinks() -> IssueResult:
        if offline:
            return IssueResult.skipped("missing_inlinks", "offline")
        if not network.sparql_endpoint:
            return IssueResult.skipped("missing_inlinks", "no SPARQL endpoint configured")
        try:
            res = find_missing_inlinks(v, network, session)
        except EndpointUnreachable as exc:
            log.error("in-link check aborted: %s", exc)
            return IssueResult.skipped("missing_inlinks", f"endpoint unreachable: {exc}")
        return IssueResult.of("missing_inlinks", res.affected, res.extrapolated_total,
                              res.extrapolated)

    def broken_links() -> IssueResult:
        if offline:
            return IssueResult.skipped("broken_links", "offline")
        res = probe_links(v, network, session)
        return IssueResult.of("broken_links", res.broken, res.extrapolated_total,
                              res.extrapolated)

    table: Dict[str, Callable[[], IssueResult]] = {
        "omitted_invalid_language_tags": language_tags,
        "incomplete_language_coverage":
            lambda: IssueResult.of("incomplete_language_coverage", check_language_coverage(v)),
        "undocumented_concepts":
            lambda: IssueResult.of("undocumented_concepts", check_undocumented_concepts(v)),
        "label_conflicts": label_conflicts,
        "orphan_concepts": lambda: IssueResult.of("orphan_concepts", find_orphan_concepts(v)),
        "weakly_connected_components": components,
        "cyclic_hierarchical_relations": cycles,
        "valueless_associative_relations":
            lambda: IssueResult.of("valueless_associative_relations",
                                   find_valueless_associative_relations(v)),
        "solely_transitively_related_concepts":
            lambda: IssueResult.of("solely_transitively_related_concepts",
                                   find_solely_transitive_pairs(v)),
        "omitted_top_concepts":
            lambda: IssueResult.of("omitted_top_concepts", find_schemes_without_top_concepts(v)),
        "top_concept_having_broader":
            lambda: IssueResult.of("top_concept_having_broader",
                                   find_top_concepts_with_broader(v)),
        "missing_inlinks": missing_inlinks,
        "missing_outlinks": lambda: IssueResult.of("missing_outlinks", find_missing_outlinks(v)),
        "broken_links": broken_links,
        "undefined_skos_resources":
            lambda: IssueResult.of("undefined_skos_resources", find_undefined_skos_resources(v)),
    }
    assert set(table) == set(ISSUES_BY_ID)
    return [table[i]() for i in selected]


__all__ = [
    "ComponentReport", "EndpointUnreachable", "HierarchyCycle", "LabelConflict",
    "LanguageTagFinding", "LinkProbeResult", "NetworkConfig", "case_insensitive_equality",
    "case_sensitive_equality", "check_label_conflicts", "check_language_coverage",
    "check_language_tags", "check_undocumented_concepts", "find_components",
    "find_hierarchy_cycles", "find_missing_inlinks", "find_missing_outlinks",
    "find_orphan_concepts", "find_schemes_without_top_concepts",
    "find_solely_transitive_pairs", "find_top_concepts_with_broader",
    "find_undefined_skos_resources", "find_valueless_associative_relations", "probe_links",
    "run_checks", "validate_language_tag",
]
