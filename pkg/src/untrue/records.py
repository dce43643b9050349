"""Core record types shared across the pipeline stages."""

from __future__ import annotations

import hashlib
import re
from dataclasses import asdict, dataclass
from datetime import date, datetime, timezone
from typing import Any
from urllib.parse import urlparse

_WS_RE = re.compile(r"\s+")

# Month D, YYYY is the only non-ISO date form we accept; anything else stays unset.
_TEXT_DATE_FORMATS = ("%B %d, %Y", "%b %d, %Y")


def collapse_ws(text: str) -> str:
    """Trim and collapse internal whitespace runs to single spaces."""
    return _WS_RE.sub(" ", text).strip()


def record_id_for(review_url: str, claim_text: str) -> str:
    """Stable dedup key: sha256 over the URL/claim pair, lowercase hex."""
    payload = (review_url + "\n" + claim_text).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def parse_published_date(raw: str | None) -> date | None:
    """Parse ISO-8601 dates/datetimes and "Month D, YYYY"; None if unparseable."""
    if not raw:
        return None
    text = raw.strip()
    if not text:
        return None
    try:
        return date.fromisoformat(text[:10])
    except ValueError:
        pass
    try:
        return datetime.fromisoformat(text.replace("Z", "+00:00")).date()
    except ValueError:
        pass
    for fmt in _TEXT_DATE_FORMATS:
        try:
            return datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    return None


def is_absolute_url(url: str) -> bool:
    try:
        parsed = urlparse(url)
    except ValueError:
        return False
    return bool(parsed.scheme in ("http", "https") and parsed.netloc)


@dataclass(frozen=True)
class RawDocument:
    """One fetched page: URL, fetch metadata, and the raw body bytes."""

    url: str
    fetched_at: datetime
    http_status: int
    content_type: str
    body: bytes

    def problems(self, now: datetime | None = None) -> list[str]:
        """Invariant violations, empty when the document is well-formed."""
        issues = []
        if not is_absolute_url(self.url):
            issues.append("url is not an absolute http(s) URL")
        reference = now or datetime.now(timezone.utc)
        fetched = self.fetched_at
        if fetched.tzinfo is None:
            fetched = fetched.replace(tzinfo=timezone.utc)
        if fetched > reference:
            issues.append("fetched_at lies in the future")
        if self.http_status == 200 and not self.body:
            issues.append("empty body with HTTP 200")
        return issues


@dataclass
class ClaimRecord:
    """One extracted fact-check: the claim, its rating, and provenance."""

    record_id: str
    claim_text: str
    review_title: str
    review_url: str
    source_id: str
    country: str
    claimant: str | None = None
    date_published: date | None = None
    rating_value: float | None = None
    best_rating: float | None = None
    worst_rating: float | None = None
    rating_label: str | None = None

    @classmethod
    def build(
        cls,
        *,
        claim_text: str,
        review_url: str,
        review_title: str = "",
        source_id: str = "",
        country: str = "",
        claimant: str | None = None,
        date_published: date | None = None,
        rating_value: float | None = None,
        best_rating: float | None = None,
        worst_rating: float | None = None,
        rating_label: str | None = None,
    ) -> "ClaimRecord":
        claim_text = collapse_ws(claim_text)
        return cls(
            record_id=record_id_for(review_url, claim_text),
            claim_text=claim_text,
            review_title=collapse_ws(review_title),
            review_url=review_url,
            source_id=source_id,
            country=country,
            claimant=collapse_ws(claimant) if claimant else None,
            date_published=date_published,
            rating_value=rating_value,
            best_rating=best_rating,
            worst_rating=worst_rating,
            rating_label=rating_label,
        )

    def problems(self) -> list[str]:
        """Invariant violations; records with problems are dropped at extraction."""
        issues = []
        if not self.claim_text:
            issues.append("empty claim_text")
        if self.record_id != record_id_for(self.review_url, self.claim_text):
            issues.append("record_id does not match (review_url, claim_text)")
        trio = (self.rating_value, self.best_rating, self.worst_rating)
        if all(v is not None for v in trio):
            if not (self.worst_rating < self.best_rating):  # type: ignore[operator]
                issues.append("worst_rating not below best_rating")
            elif not (self.worst_rating <= self.rating_value <= self.best_rating):  # type: ignore[operator]
                issues.append("rating_value outside [worst_rating, best_rating]")
        return issues

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["date_published"] = (
            self.date_published.isoformat() if self.date_published else None
        )
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ClaimRecord":
        published = data.get("date_published")
        return cls(
            record_id=data["record_id"],
            claim_text=data["claim_text"],
            review_title=data.get("review_title", ""),
            review_url=data["review_url"],
            source_id=data.get("source_id", ""),
            country=data.get("country", ""),
            claimant=data.get("claimant"),
            date_published=date.fromisoformat(published) if published else None,
            rating_value=data.get("rating_value"),
            best_rating=data.get("best_rating"),
            worst_rating=data.get("worst_rating"),
            rating_label=data.get("rating_label"),
        )
