"""Shared helpers for the test-suite: fixture loading and a fake HTTP transport."""

from __future__ import annotations

import json
import select
import socket
import threading
from pathlib import Path
from typing import Callable, Dict, Optional, Set
from urllib.parse import parse_qs, urlsplit

import requests
from requests.adapters import BaseAdapter
from requests.structures import CaseInsensitiveDict

from skoscheck.model import build_vocabulary
from skoscheck.rdf import parse_turtle

FIXTURES = Path(__file__).parent / "fixtures"

PREFIXES = """\
@prefix ex: <http://ex.org/v/> .
@prefix other: <http://other.org/t/> .
@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
"""

EX = "http://ex.org/v/"


def vocab(turtle: str, namespace: Optional[str] = EX):
    """Vocabulary from a Turtle snippet using the standard test prefixes."""
    return build_vocabulary(parse_turtle(PREFIXES + turtle), namespace)


def fixture_bytes(name: str) -> bytes:
    return (FIXTURES / name).read_bytes()


class StubAdapter(BaseAdapter):
    """In-process transport for requests.

    ``routes`` maps a URL to a status code, a ("redirect", target) pair, or an
    exception instance to raise. Unknown URLs answer 200. A SPARQL endpoint URL
    answers ASK queries: the concept is unknown (no in-links) iff it is in
    ``no_inlinks``.
    """

    def __init__(self, routes: Optional[Dict[str, object]] = None,
                 sparql_endpoint: Optional[str] = None,
                 no_inlinks: Set[str] = frozenset(),
                 on_request: Optional[Callable[[requests.PreparedRequest], None]] = None):
        super().__init__()
        self.routes = routes or {}
        self.sparql_endpoint = sparql_endpoint
        self.no_inlinks = set(no_inlinks)
        self.on_request = on_request
        self.calls = []
        self._lock = threading.Lock()

    def _response(self, request, status, headers=None, body=b""):
        r = requests.Response()
        r.status_code = status
        r.headers = CaseInsensitiveDict(headers or {})
        r._content = body
        r.url = request.url
        r.request = request
        r.encoding = "utf-8"
        return r

    def send(self, request, **kwargs):
        with self._lock:
            self.calls.append((request.method, request.url))
        if self.on_request:
            self.on_request(request)
        parts = urlsplit(request.url)
        base = f"{parts.scheme}://{parts.netloc}{parts.path}"
        if self.sparql_endpoint and base == self.sparql_endpoint:
            query = parse_qs(parts.query)["query"][0]
            target = query[query.index("<") + 1:query.rindex(">")]
            body = json.dumps({"head": {}, "boolean": target not in self.no_inlinks})
            return self._response(request, 200,
                                  {"Content-Type": "application/sparql-results+json"},
                                  body.encode())
        route = self.routes.get(request.url, 200)
        if isinstance(route, Exception):
            raise route
        if isinstance(route, tuple):
            return self._response(request, 301, {"Location": route[1]})
        return self._response(request, route)

    def close(self):
        pass


def stub_session(adapter: StubAdapter) -> requests.Session:
    session = requests.Session()
    session.mount("http://", adapter)
    session.mount("https://", adapter)
    return session


SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
RANDOM_PROPERTIES = [
    "broader", "narrower", "broaderTransitive", "narrowerTransitive", "related",
    "semanticRelation", "broadMatch", "narrowMatch", "exactMatch", "closeMatch",
    "relatedMatch", "mappingRelation", "hasTopConcept", "topConceptOf", "inScheme",
    "prefLabel", "definition",
]


def random_skos_triples(rng, max_triples=40, nodes=7):
    """Random triples over a small node pool and the SKOS properties above."""
    from skoscheck.rdf import BNode, IRI, Literal

    pool = [IRI(f"{EX}n{i}") for i in range(nodes - 1)] + [BNode("b0")]
    lits = [Literal("lit"), Literal("x", language="en")]
    out = []
    for _ in range(rng.randint(0, max_triples)):
        p = IRI(SKOS_NS + rng.choice(RANDOM_PROPERTIES))
        o = rng.choice(lits) if rng.random() < 0.1 else rng.choice(pool)
        out.append((rng.choice(pool), p, o))
    return out


class ScriptedServer:
    """Local HTTP server with scripted answers per path, used as a context manager.

    ``script`` maps a path to an int status, ("redirect", path), "timeout" (sleep
    past any sane client timeout) or "no-head" (405 on HEAD, 200 on GET).
    ``/sparql`` answers ASK queries, knowing exactly the IRIs in ``known``.
    The peak number of requests handled at once is kept in ``peak``.
    """

    def __init__(self, script=None, known=(), hold=0.02, sleep=2.0):
        import http.server

        self.script = dict(script or {})
        self.known = set(known)
        self.hold = hold
        self.sleep = sleep
        self.active = 0
        self.peak = 0
        self.requests = []
        self._lock = threading.Lock()
        outer = self

        class Handler(http.server.BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def _answer(self, head):
                with outer._lock:
                    outer.active += 1
                    outer.peak = max(outer.peak, outer.active)
                    outer.requests.append((self.command, self.path))
                try:
                    outer._respond(self, head)
                except (BrokenPipeError, ConnectionResetError):
                    pass
                finally:
                    with outer._lock:
                        outer.active -= 1

            def do_HEAD(self):
                self._answer(True)

            def do_GET(self):
                self._answer(False)

        self._server = http.server.ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._server.daemon_threads = True
        self.base = f"http://127.0.0.1:{self._server.server_address[1]}"

    def url(self, path):
        return self.base + path

    def _respond(self, h, head):
        import time

        time.sleep(self.hold)
        parts = urlsplit(h.path)
        if parts.path == "/sparql":
            query = parse_qs(parts.query)["query"][0]
            target = query[query.index("<") + 1:query.rindex(">")]
            body = json.dumps({"head": {}, "boolean": target in self.known}).encode()
            h.send_response(200)
            h.send_header("Content-Type", "application/sparql-results+json")
            h.send_header("Content-Length", str(len(body)))
            h.end_headers()
            h.wfile.write(body)
            return
        action = self.script.get(parts.path, 200)
        if action == "timeout":
            # hang until the client gives up and closes, or ``sleep`` runs out
            ready, _, _ = select.select([h.connection], [], [], self.sleep)
            if ready and not h.connection.recv(1, socket.MSG_PEEK):
                h.close_connection = True
                return
            action = 200
        if action == "no-head":
            action = 405 if head else 200
        if isinstance(action, tuple):
            h.send_response(301)
            h.send_header("Location", action[1])
            h.send_header("Content-Length", "0")
            h.end_headers()
            return
        h.send_response(action)
        h.send_header("Content-Length", "0")
        h.end_headers()

    def __enter__(self):
        self._thread = threading.Thread(target=self._server.serve_forever, args=(0.05,),
                                        daemon=True)
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()


def synthetic_graph(n_concepts=100_000, n_relations=300_000, seed=0):
    """Large random vocabulary: an acyclic broader tree plus narrower shortcuts,
    related links and broadMatch links, labels and some definitions."""
    import random

    from skoscheck.namespaces import RDF_TYPE, SKOS
    from skoscheck.rdf import Graph, IRI, Literal

    rng = random.Random(seed)
    ns = "http://synthetic.example.org/c/"
    concepts = [IRI(f"{ns}{i}") for i in range(n_concepts)]
    parent = [None] + [rng.randrange(i) for i in range(1, n_concepts)]
    g = Graph()
    scheme = IRI(ns + "scheme")
    g.add(scheme, SKOS.hasTopConcept, concepts[0])
    for i, c in enumerate(concepts):
        g.add(c, RDF_TYPE, SKOS.Concept)
        g.add(c, SKOS.prefLabel, Literal(f"concept {i}", language="en"))
        if i % 3 == 0:
            g.add(c, SKOS.altLabel, Literal(f"Konzept {i}", language="de"))
        if i % 2 == 0:
            g.add(c, SKOS.definition, Literal(f"Definition {i}", language="en"))
        if parent[i] is not None:
            g.add(c, SKOS.broader, concepts[parent[i]])
    # the tree gives n - 1 relations; the rest is split over three more kinds
    extra = n_relations - (n_concepts - 1)
    quota = {SKOS.narrower: extra // 4, SKOS.broadMatch: extra // 4}
    quota[SKOS.related] = extra - 2 * (extra // 4)
    added = 0
    while added < quota[SKOS.narrower]:
        i = rng.randrange(1, n_concepts)
        grand = parent[parent[i]] if parent[i] else None
        if grand is not None and g.add(concepts[grand], SKOS.narrower, concepts[i]):
            added += 1
    for prop in (SKOS.broadMatch, SKOS.related):
        added = 0
        while added < quota[prop]:
            a, b = rng.randrange(n_concepts), rng.randrange(n_concepts)
            if a != b and g.add(concepts[a], prop, concepts[b]):
                added += 1
    return g, ns
