"""Small OEIS search client with an on-disk response cache.

Raw response bodies are stored one file per query under the cache directory,
so a directory of recorded responses doubles as an offline fixture set.
"""

from __future__ import annotations

import json
import os
import re
import threading
import time
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import requests

SEARCH_URL = "https://oeis.org/search"
CACHE_ENV = "FIBINV_CACHE_DIR"
MIN_INTERVAL = 1.0
MIN_TERMS = 4


class OeisError(Exception):
    pass


class OeisNetworkError(OeisError):
    pass


class OeisParseError(OeisError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fibinv" / "oeis"


def query_text(terms) -> str:
    return ",".join(str(int(t)) for t in terms)


def cache_key(query: str) -> str:
    return re.sub(r"[^0-9,\-]", "", query).replace(",", "_").replace("-", "m") + ".json"


@dataclass
class OeisMatch:
    identifier: str
    name: str
    matched_prefix: int
    retrieved_at: str
    cache_hit: bool


@dataclass
class OeisLookup:
    query: str
    matches: list = field(default_factory=list)
    cache_hit: bool = False
    cache_miss: bool = False
    skipped: str = ""

    def to_dict(self, timestamps: bool = True) -> dict:
        d = asdict(self)
        if not timestamps:
            for m in d["matches"]:
                m.pop("retrieved_at", None)
        return d


def _find_run(data: list, query: list) -> int:
    """Index of the first contiguous occurrence of ``query`` in ``data``, or -1."""
    m = len(query)
    for i in range(len(data) - m + 1):
        if data[i:i + m] == query:
            return i
    return -1


def parse_response(text: str, query: str, retrieved_at: str, cache_hit: bool) -> list[OeisMatch]:
    """Parse an OEIS ``fmt=json`` body (bare result list, or the older wrapped form)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OeisParseError(f"response for {query!r} is not JSON: {exc}") from exc
    if doc is None:
        return []
    if isinstance(doc, dict):
        results = doc.get("results") or []
    elif isinstance(doc, list):
        results = doc
    else:
        raise OeisParseError(f"unexpected response type {type(doc).__name__}")
    wanted = [int(t) for t in query.split(",")]
    matches = []
    for r in results:
        try:
            number = int(r["number"])
            data = [int(t) for t in str(r["data"]).split(",") if t.strip()]
        except (KeyError, TypeError, ValueError) as exc:
            raise OeisParseError(f"malformed result entry: {exc}") from exc
        if _find_run(data, wanted) < 0:
            continue
        matches.append(OeisMatch(f"A{number:06d}", str(r.get("name", "")), len(wanted), retrieved_at, cache_hit))
    return matches


class OeisClient:
    """Serialized, rate-limited, cached access to the OEIS search endpoint."""

    _lock = threading.Lock()
    _last_request = 0.0

    def __init__(self, cache_dir=None, offline: bool = False, session=None,
                 url: str = SEARCH_URL, min_interval: float | None = None, timeout: float = 20.0):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.offline = offline
        self.session = session or requests.Session()
        self.url = url
        self.min_interval = MIN_INTERVAL if min_interval is None else min_interval
        self.timeout = timeout

    def _cached(self, query: str):
        path = self.cache_dir / cache_key(query)
        if not path.is_file():
            return None
        stamp = datetime.fromtimestamp(path.stat().st_mtime, timezone.utc).isoformat(timespec="seconds")
        return path.read_text(encoding="utf-8"), stamp

    def _fetch(self, query: str) -> str:
        with OeisClient._lock:
            wait = OeisClient._last_request + self.min_interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            try:
                resp = self.session.get(self.url, params={"q": query, "fmt": "json"}, timeout=self.timeout)
                resp.raise_for_status()
            except requests.RequestException as exc:
                raise OeisNetworkError(f"OEIS request for {query!r} failed: {exc}") from exc
            finally:
                OeisClient._last_request = time.monotonic()
        return resp.text

    def lookup(self, terms) -> OeisLookup:
        terms = list(terms)
        if not all(isinstance(t, (int, Fraction)) and int(t) == t for t in terms):
            return OeisLookup(query="", skipped="non-integer terms")
        query = query_text(terms)
        if len(terms) < MIN_TERMS:
            return OeisLookup(query=query, skipped=f"fewer than {MIN_TERMS} terms")
        if all(t == 0 for t in terms):
            return OeisLookup(query=query, skipped="degenerate sequence (all zero)")

        hit = self._cached(query)
        if hit is not None:
            text, stamp = hit
            return OeisLookup(query, parse_response(text, query, stamp, True), cache_hit=True)
        if self.offline:
            return OeisLookup(query, cache_miss=True)

        text = self._fetch(query)
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        matches = parse_response(text, query, stamp, False)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        (self.cache_dir / cache_key(query)).write_text(text, encoding="utf-8")
        return OeisLookup(query, matches)


def oeis_lookup(terms, client: OeisClient | None = None, **kwargs) -> OeisLookup:
    return (client or OeisClient(**kwargs)).lookup(terms)
