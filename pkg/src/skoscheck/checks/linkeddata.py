"""Linked Data checks: in-links, out-links, broken links and undefined SKOS terms.

In-link and broken-link checks talk to the network. Both can work on a seeded
random subsample of their candidates and extrapolate the affected count from it.
"""

from __future__ import annotations

import enum
import logging
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, FrozenSet, List, Optional, Set, Tuple
from urllib.parse import urljoin, urlsplit

import requests
from requests.adapters import HTTPAdapter

from ..model import Vocabulary
from ..namespaces import SCHEMA_NAMESPACES, SKOS_NS
from ..rdf import IRI, Term

log = logging.getLogger(__name__)

REDIRECT_CODES = frozenset({301, 302, 303, 307, 308})
USER_AGENT = "skoscheck (SKOS vocabulary quality checker)"


@dataclass(frozen=True)
class NetworkConfig:
    timeout: float = 30.0
    max_redirects: int = 10
    max_parallel_requests: int = 4
    subsample_rate: float = 1.0
    random_seed: int = 0
    sparql_endpoint: Optional[str] = None
    host_delay: float = 0.5
    accept_2xx: bool = False

    def __post_init__(self):
        if not 0 < self.subsample_rate <= 1:
            raise ValueError("subsample_rate must lie in (0, 1]")
        if self.max_parallel_requests < 1:
            raise ValueError("max_parallel_requests must be at least 1")
        if self.max_redirects < 0:
            raise ValueError("max_redirects must not be negative")

    def summary(self) -> Dict[str, object]:
        return {
            "timeout": self.timeout,
            "max_redirects": self.max_redirects,
            "max_parallel_requests": self.max_parallel_requests,
            "subsample_rate": self.subsample_rate,
            "random_seed": self.random_seed,
            "sparql_endpoint": self.sparql_endpoint,
        }


def subsample(items, rate: float, seed: int) -> List:
    """Deterministic sample of ``round(rate * n)`` items (at least one if any)."""
    ordered = sorted(items)
    if rate >= 1 or not ordered:
        return ordered
    k = max(1, round(rate * len(ordered)))
    return sorted(random.Random(seed).sample(ordered, k))


def extrapolate(affected: int, rate: float) -> int:
    return round(affected / rate)


def _session(pool: int) -> requests.Session:
    session = requests.Session()
    adapter = HTTPAdapter(pool_connections=pool, pool_maxsize=pool)
    session.mount("http://", adapter)
    session.mount("https://", adapter)
    session.headers["User-Agent"] = USER_AGENT
    return session


# -- missing in-links ----------------------------------------------------------

class EndpointUnreachable(RuntimeError):
    pass


class SparqlClient:
    """Minimal SPARQL protocol client: GET with a ``query`` parameter, JSON results."""

    def __init__(self, endpoint: str, timeout: float = 30.0,
                 session: Optional[requests.Session] = None):
        self.endpoint = endpoint
        self.timeout = timeout
        self.session = session or _session(4)

    def ask(self, query: str) -> bool:
        r = self.session.get(self.endpoint, params={"query": query}, timeout=self.timeout,
                             headers={"Accept": "application/sparql-results+json"})
        r.raise_for_status()
        data = r.json()
        if "boolean" in data:
            return bool(data["boolean"])
        return bool(data.get("results", {}).get("bindings"))


def inlink_query(uri: str) -> str:
    return f"ASK {{ ?s ?p <{uri}> }}"


@dataclass
class InlinkResult:
    affected: Set[IRI]
    sampled: int
    extrapolated_total: int
    errors: int = 0
    rate: float = 1.0

    @property
    def extrapolated(self) -> bool:
        return self.rate < 1


def find_missing_inlinks(v: Vocabulary, cfg: NetworkConfig,
                         session: Optional[requests.Session] = None) -> InlinkResult:
    """Authoritative concepts for which the endpoint knows no triple pointing at them.

    Connection failures abort the check with EndpointUnreachable. Other per-concept
    failures are counted and shrink the effective sample used for extrapolation.
    """
    if not cfg.sparql_endpoint:
        raise EndpointUnreachable("no SPARQL endpoint configured")
    client = SparqlClient(cfg.sparql_endpoint, cfg.timeout,
                          session or _session(cfg.max_parallel_requests))
    sample = subsample(v.authoritative_concepts, cfg.subsample_rate, cfg.random_seed)

    def probe(concept: IRI) -> Optional[bool]:
        try:
            return client.ask(inlink_query(concept))
        except requests.ConnectionError as exc:
            raise EndpointUnreachable(f"{cfg.sparql_endpoint}: {exc}") from exc
        except (requests.RequestException, ValueError) as exc:
            log.warning("in-link query for %s failed: %s", concept, exc)
            return None

    with ThreadPoolExecutor(max_workers=cfg.max_parallel_requests) as pool:
        answers = list(pool.map(probe, sample))

    affected = {c for c, known in zip(sample, answers) if known is False}
    errors = sum(1 for a in answers if a is None)
    answered = len(sample) - errors
    rate = cfg.subsample_rate
    if errors and answered:
        rate *= answered / len(sample)
    total = extrapolate(len(affected), rate) if answered else 0
    return InlinkResult(affected, len(sample), total, errors, rate)


# -- missing out-links ---------------------------------------------------------

def _external(term: Term, namespace: str) -> bool:
    return (isinstance(term, IRI) and not term.startswith(namespace)
            and not term.startswith(SCHEMA_NAMESPACES))


def find_missing_outlinks(v: Vocabulary) -> Set[IRI]:
    g = v.asserted
    ns = v.namespace
    missing = set()
    for concept in v.authoritative_concepts:
        linked = any(_external(o, ns) for objs in g.outgoing(concept).values() for o in objs)
        if not linked:
            linked = any(_external(s, ns) for s in g.incoming(concept))
        if not linked:
            missing.add(concept)
    return missing


# -- broken links --------------------------------------------------------------

class ProbeError(str, enum.Enum):
    TIMEOUT = "Timeout"
    CONNECTION_FAILED = "ConnectionFailed"
    TOO_MANY_REDIRECTS = "TooManyRedirects"
    NON_HTTP_SCHEME = "NonHttpScheme"


@dataclass(frozen=True)
class LinkProbeResult:
    uri: str
    final_status: Optional[int] = None
    redirect_chain: Tuple[str, ...] = ()
    error: Optional[ProbeError] = None

    def healthy(self, accept_2xx: bool = False) -> bool:
        if self.error is not None:
            return False
        if accept_2xx:
            return 200 <= self.final_status < 300
        return self.final_status == 200


@dataclass
class ProbeReport:
    results: List[LinkProbeResult]
    broken: Set[str]
    extrapolated_total: int
    rate: float = 1.0

    @property
    def extrapolated(self) -> bool:
        return self.rate < 1


class _HostThrottle:
    """Keeps successive requests to one host at least ``delay`` seconds apart."""

    def __init__(self, delay: float):
        self.delay = delay
        self._lock = threading.Lock()
        self._next: Dict[str, float] = {}

    def wait(self, url: str) -> None:
        if self.delay <= 0:
            return
        host = urlsplit(url).netloc
        with self._lock:
            now = time.monotonic()
            slot = max(now, self._next.get(host, now))
            self._next[host] = slot + self.delay
        if slot > now:
            time.sleep(slot - now)


def _is_http(uri: str) -> bool:
    return uri.lower().startswith(("http://", "https://"))


def probe_uri(uri: str, session: requests.Session, cfg: NetworkConfig,
              throttle: Optional[_HostThrottle] = None) -> LinkProbeResult:
    """Dereference one URI: HEAD (GET if HEAD is refused), following redirects by hand."""
    chain: List[str] = []
    url = uri
    while True:
        if not _is_http(url):
            return LinkProbeResult(uri, None, tuple(chain), ProbeError.NON_HTTP_SCHEME)
        if throttle is not None:
            throttle.wait(url)
        try:
            r = session.head(url, allow_redirects=False, timeout=cfg.timeout)
            if r.status_code in (405, 501):
                r.close()
                r = session.get(url, allow_redirects=False, timeout=cfg.timeout, stream=True)
            r.close()
        except requests.Timeout:
            return LinkProbeResult(uri, None, tuple(chain), ProbeError.TIMEOUT)
        except requests.RequestException:
            return LinkProbeResult(uri, None, tuple(chain), ProbeError.CONNECTION_FAILED)
        location = r.headers.get("Location")
        if r.status_code not in REDIRECT_CODES or not location:
            return LinkProbeResult(uri, r.status_code, tuple(chain))
        if len(chain) >= cfg.max_redirects:
            return LinkProbeResult(uri, None, tuple(chain), ProbeError.TOO_MANY_REDIRECTS)
        url = urljoin(url, location)
        chain.append(url)


def dereferenceable(v: Vocabulary) -> List[str]:
    return sorted(r for r in v.resources if isinstance(r, IRI) and _is_http(r))


def probe_links(v: Vocabulary, cfg: NetworkConfig,
                session: Optional[requests.Session] = None) -> ProbeReport:
    sample = subsample(dereferenceable(v), cfg.subsample_rate, cfg.random_seed)
    session = session or _session(cfg.max_parallel_requests)
    throttle = _HostThrottle(cfg.host_delay)
    with ThreadPoolExecutor(max_workers=cfg.max_parallel_requests) as pool:
        results = list(pool.map(lambda u: probe_uri(u, session, cfg, throttle), sample))
    results.sort(key=lambda r: r.uri)
    broken = {r.uri for r in results if not r.healthy(cfg.accept_2xx)}
    return ProbeReport(results, broken, extrapolate(len(broken), cfg.subsample_rate),
                       cfg.subsample_rate)


# -- undefined SKOS resources ------------------------------------------------

@lru_cache(maxsize=None)
def _term_list(name: str) -> FrozenSet[str]:
    text = resources.files("skoscheck").joinpath(f"data/{name}").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines()
                     if line.strip() and not line.startswith("#"))


def skos_terms() -> FrozenSet[str]:
    return _term_list("skos_terms.txt")


def deprecated_skos_terms() -> FrozenSet[str]:
    return _term_list("skos_deprecated.txt")


def find_undefined_skos_resources(v: Vocabulary) -> Set[IRI]:
    current = skos_terms()
    deprecated = deprecated_skos_terms()
    return {r for r in v.resources
            if isinstance(r, IRI) and r.startswith(SKOS_NS)
            and (r in deprecated or r not in current)}


__all__ = [
    "EndpointUnreachable", "InlinkResult", "LinkProbeResult", "NetworkConfig", "ProbeError",
    "ProbeReport", "SparqlClient", "dereferenceable", "extrapolate", "find_missing_inlinks",
    "find_missing_outlinks", "find_undefined_skos_resources", "probe_links", "probe_uri",
    "subsample",
]
