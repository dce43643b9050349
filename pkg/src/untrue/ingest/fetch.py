"""Polite live fetching, gated by the template white-list.

A URL is only ever requested when some registered source template covers its
hostname; requests to one host are spaced by at least the politeness delay.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable

from untrue.ingest.templates import AmbiguousTemplate, NoMatchingTemplate, TemplateRegistry
from untrue.records import RawDocument
from urllib.parse import urlparse

DEFAULT_USER_AGENT = "untrue-search/0.1 (claim-review collector)"

# transport(url, headers, timeout) -> (status, content_type, body)
Transport = Callable[[str, dict[str, str], float], tuple[int, str, bytes]]


class WhitelistViolation(Exception):
    """URL host has no registered template; refused before any request."""


class FetchError(Exception):
    """Network failure or timeout while fetching."""


@dataclass(frozen=True)
class Politeness:
    delay: float = 1.0
    user_agent: str = DEFAULT_USER_AGENT
    timeout: float = 20.0

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError("politeness delay must be >= 0")


def _requests_transport(url: str, headers: dict[str, str], timeout: float):
    import requests

    response = requests.get(url, headers=headers, timeout=timeout)
    return (
        response.status_code,
        response.headers.get("Content-Type", ""),
        response.content,
    )


class Fetcher:
    """Per-host politeness on top of a pluggable transport."""

    def __init__(
        self,
        registry: TemplateRegistry,
        politeness: Politeness | None = None,
        transport: Transport | None = None,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self._registry = registry
        self._politeness = politeness or Politeness()
        self._transport = transport or _requests_transport
        self._clock = clock
        self._sleep = sleep
        self._last_request: dict[str, float] = {}
        self._lock = threading.Lock()
        self._host_locks: dict[str, threading.Lock] = {}

    def fetch(self, url: str) -> RawDocument:
        """GET one whitelisted URL, honoring the per-host delay."""
        try:
            self._registry.match(url)
        except (NoMatchingTemplate, AmbiguousTemplate) as exc:
            raise WhitelistViolation(str(exc)) from exc

        host = (urlparse(url).hostname or "").lower()
        with self._lock:
            host_lock = self._host_locks.setdefault(host, threading.Lock())

        with host_lock:
            last = self._last_request.get(host)
            now = self._clock()
            if last is not None:
                wait = self._politeness.delay - (now - last)
                if wait > 0:
                    self._sleep(wait)
            self._last_request[host] = self._clock()
            headers = {"User-Agent": self._politeness.user_agent}
            try:
                status, content_type, body = self._transport(
                    url, headers, self._politeness.timeout
                )
            except Exception as exc:
                raise FetchError(f"fetch of {url} failed: {exc}") from exc

        return RawDocument(
            url=url,
            fetched_at=datetime.now(timezone.utc),
            http_status=status,
            content_type=content_type,
            body=body,
        )
