"""Command-line interface: ``skoscheck [analyze|stats|issues] ...``."""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from datetime import datetime, timezone
from typing import List, Optional, Sequence

from . import __version__
from .checks import NetworkConfig, run_checks
from .model import NoConcepts, build_vocabulary, compute_stats
from .rdf import Graph, RDFParseError, guess_format, parse
from .report import ISSUE_IDS, ISSUES, assemble, render_json, render_stats, render_text

log = logging.getLogger("skoscheck")

EXIT_OK, EXIT_ISSUES, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3
ENDPOINT_ENV = "SKOSCHECK_SPARQL_ENDPOINT"
COMMANDS = ("analyze", "stats", "issues")
MAX_WARNINGS_SHOWN = 5


class UsageError(Exception):
    pass


class RuntimeFailure(Exception):
    pass


def _issue_list(values: Optional[List[str]]) -> Optional[List[str]]:
    if not values:
        return None
    ids = [i.strip() for v in values for i in v.split(",") if i.strip()]
    unknown = sorted(set(ids) - set(ISSUE_IDS))
    if unknown:
        raise UsageError(f"unknown issue id(s): {', '.join(unknown)} "
                         f"(see 'skoscheck issues')")
    return ids


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="+", metavar="FILE",
                   help="vocabulary files (.ttl or .nt); '-' reads standard input")
    p.add_argument("--format", choices=("turtle", "ntriples"),
                   help="input format (default: from file extension, turtle for stdin)")
    p.add_argument("--namespace", help="vocabulary namespace (default: inferred)")
    p.add_argument("--lenient", action=argparse.BooleanOptionalAction, default=True,
                   help="skip malformed statements instead of failing (default: on)")
    p.add_argument("--output", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skoscheck", description="Detect quality issues in SKOS vocabularies.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command")

    analyze = sub.add_parser("analyze", help="run quality checks (default command)")
    _add_input_args(analyze)
    analyze.add_argument("--issues", action="append", metavar="IDS",
                         help="comma-separated issue ids to run (default: all)")
    analyze.add_argument("--exclude-issues", action="append", metavar="IDS",
                         help="comma-separated issue ids to leave out")
    analyze.add_argument("--threshold", type=float, default=1.0,
                         help="label similarity threshold in (0, 1] (default: 1.0)")
    analyze.add_argument("--case-sensitive", action="store_true",
                         help="compare labels case-sensitively")
    analyze.add_argument("--pref-label-only", action="store_true",
                         help="only compare preferred labels for conflicts")
    analyze.add_argument("--grammar-only", action="store_true",
                         help="check language tags for syntax only, not the ISO 639 list")
    analyze.add_argument("--offline", action="store_true",
                         help="skip checks that need the network")
    analyze.add_argument("--sparql-endpoint", default=os.environ.get(ENDPOINT_ENV),
                         help=f"endpoint for the in-link check (env: {ENDPOINT_ENV})")
    analyze.add_argument("--subsample", type=float, nargs="?", const=0.05, default=1.0,
                         metavar="RATE",
                         help="probe a random fraction of candidates (bare flag: 0.05)")
    analyze.add_argument("--seed", type=int, default=0, help="subsample seed (default: 0)")
    analyze.add_argument("--timeout", type=float, default=30.0,
                         help="per-request timeout in seconds")
    analyze.add_argument("--max-redirects", type=int, default=10)
    analyze.add_argument("--parallel", type=int, default=4,
                         help="maximum concurrent network requests")
    analyze.add_argument("--host-delay", type=float, default=0.5,
                         help="minimum seconds between requests to one host")
    analyze.add_argument("--accept-2xx", action="store_true",
                         help="treat any 2xx final status as a working link")
    analyze.add_argument("--full", action="store_true",
                         help="list affected resources, not just counts")
    analyze.add_argument("--deterministic", action="store_true",
                         help="omit the timestamp so output is reproducible")

    stats = sub.add_parser("stats", help="print vocabulary statistics")
    _add_input_args(stats)

    sub.add_parser("issues", help="list issue ids")
    return parser


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise RuntimeFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_graph(paths: Sequence[str], fmt: Optional[str] = None, lenient: bool = True) -> Graph:
    """Parse and merge input files; blank nodes are scoped per file."""
    graph = Graph()
    for n, path in enumerate(paths):
        this_fmt = fmt or ("turtle" if path == "-" else guess_format(path))
        if this_fmt is None:
            raise UsageError(f"cannot tell the format of {path}; use --format")
        data = _read(path)
        errors: List[RDFParseError] = []
        base = None if path == "-" else "file://" + os.path.abspath(path)
        try:
            parse(data, this_fmt, lenient=lenient, errors=errors, scope=f"d{n}",
                  base=base, graph=graph)
        except RDFParseError as exc:
            raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from exc
        if errors:
            print(f"warning: {path}: skipped {len(errors)} malformed statement(s)",
                  file=sys.stderr)
            for err in errors[:MAX_WARNINGS_SHOWN]:
                print(f"  {path}:{err.line}:{err.column}: {err.message}", file=sys.stderr)
    return graph


def _vocabulary(args):
    graph = load_graph(args.inputs, args.format, args.lenient)
    try:
        return build_vocabulary(graph, args.namespace)
    except NoConcepts as exc:
        raise UsageError(f"{exc}; pass --namespace") from exc


def _cmd_issues(args) -> int:
    width = max(len(i.id) for i in ISSUES)
    for issue in ISSUES:
        print(f"{issue.id:<{width}}  {issue.description}")
    return EXIT_OK


def _cmd_stats(args) -> int:
    v = _vocabulary(args)
    stats = compute_stats(v)
    if args.output == "json":
        doc = assemble(stats, [], {"tool_version": __version__, "namespace": v.namespace})
        sys.stdout.buffer.write(render_json(doc))
    else:
        sys.stdout.write(render_stats(stats))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    included = _issue_list(args.issues)
    excluded = set(_issue_list(args.exclude_issues) or ())
    selected = [i for i in (included or ISSUE_IDS) if i not in excluded]
    if not 0 < args.threshold <= 1:
        raise UsageError("--threshold must lie in (0, 1]")
    try:
        net = NetworkConfig(timeout=args.timeout, max_redirects=args.max_redirects,
                            max_parallel_requests=args.parallel,
                            subsample_rate=args.subsample, random_seed=args.seed,
                            sparql_endpoint=args.sparql_endpoint, host_delay=args.host_delay,
                            accept_2xx=args.accept_2xx)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    v = _vocabulary(args)
    results = run_checks(v, selected, threshold=args.threshold,
                         case_sensitive=args.case_sensitive,
                         pref_label_only=args.pref_label_only, grammar_only=args.grammar_only,
                         offline=args.offline, network=net)
    run_config = net.summary()
    run_config.update(offline=args.offline, threshold=args.threshold,
                      case_sensitive=args.case_sensitive)
    metadata = {
        "tool_version": __version__,
        "namespace": v.namespace,
        "run_config": run_config,
        "timestamp": None if args.deterministic
        else datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    doc = assemble(compute_stats(v), results, metadata, selected)
    if args.output == "json":
        sys.stdout.buffer.write(render_json(doc))
    else:
        sys.stdout.write(render_text(doc, "full" if args.full else "summary"))
    sys.stdout.flush()

    unreachable = [r for r in doc.issues
                   if r.skipped_reason and r.skipped_reason.startswith("endpoint unreachable")]
    if unreachable:
        print(f"error: {unreachable[0].skipped_reason}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_ISSUES if doc.found_issues else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # `analyze` is the default command
    i = 0
    while i < len(argv) and re.fullmatch(r"-v+|--verbose", argv[i]):
        i += 1
    if i < len(argv) and argv[i] not in COMMANDS and argv[i] not in ("-h", "--help", "--version"):
        argv.insert(i, "analyze")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s")
    handler = {"analyze": _cmd_analyze, "stats": _cmd_stats, "issues": _cmd_issues}
    try:
        return handler[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
