"""Extraction of claim-review markup into ClaimRecords.

Readers, in order of priority: JSON-LD script blocks, microdata attributes,
then the source template's field rules as a fallback. JSON-LD wins whenever
both markup flavours are present on one page.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from untrue.ingest.htmldoc import Element, page_title, parse_html, select
from untrue.ingest.templates import SourceTemplate
from untrue.records import ClaimRecord, RawDocument, collapse_ws, parse_published_date

_SCHEMA_TYPE = "ClaimReview"


class UnparseableDocument(Exception):
    """Document body is syntactically invalid beyond recovery."""


@dataclass
class ExtractionResult:
    records: list[ClaimRecord]
    dropped: int


def extract_claim_reviews(doc: RawDocument, template: SourceTemplate) -> ExtractionResult:
    """All claim reviews found in one document, as validated ClaimRecords.

    Records that violate ClaimRecord invariants are dropped and counted.
    Rating fields absent from the markup stay unset; normalization happens
    downstream.
    """
    try:
        text = doc.body.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UnparseableDocument(f"body of {doc.url} is not valid UTF-8") from exc

    if "json" in doc.content_type.lower():
        reviews = _reviews_from_json_payload(text, doc.url)
        return _build_records(reviews, doc, template)

    root = parse_html(text)
    reviews = _reviews_from_jsonld(root, doc.url, fallback_title=page_title(root))
    if not reviews:
        reviews = _reviews_from_microdata(root, doc.url, fallback_title=page_title(root))
    if not reviews:
        review = _review_from_rules(root, doc, template)
        reviews = [review] if review else []
    return _build_records(reviews, doc, template)


@dataclass
class _Review:
    """Raw field values for one claim review before validation."""

    claim_text: str = ""
    review_url: str = ""
    review_title: str = ""
    claimant: str | None = None
    date_published: str | None = None
    rating_value: float | None = None
    best_rating: float | None = None
    worst_rating: float | None = None
    rating_label: str | None = None


def _build_records(
    reviews: list[_Review], doc: RawDocument, template: SourceTemplate
) -> ExtractionResult:
    records: list[ClaimRecord] = []
    dropped = 0
    for review in reviews:
        record = ClaimRecord.build(
            claim_text=review.claim_text,
            review_url=review.review_url or doc.url,
            review_title=review.review_title,
            source_id=template.source_id,
            country=template.country,
            claimant=review.claimant,
            date_published=parse_published_date(review.date_published),
            rating_value=review.rating_value,
            best_rating=review.best_rating,
            worst_rating=review.worst_rating,
            rating_label=review.rating_label,
        )
        if record.problems():
            dropped += 1
        else:
            records.append(record)
    return ExtractionResult(records=records, dropped=dropped)


# --- JSON-LD ---------------------------------------------------------------


def _reviews_from_jsonld(root: Element, url: str, fallback_title: str) -> list[_Review]:
    reviews = []
    for script in select(root, "script[type=application/ld+json]"):
        try:
            payload = json.loads(script.text())
        except json.JSONDecodeError:
            continue  # broken block; other blocks may still be fine
        for obj in _claim_review_objects(payload):
            reviews.append(_review_from_mapping(obj, url, fallback_title))
    return reviews


def _reviews_from_json_payload(text: str, url: str) -> list[_Review]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UnparseableDocument(f"structured payload of {url} is not JSON") from exc
    return [_review_from_mapping(obj, url, "") for obj in _claim_review_objects(payload)]


def _claim_review_objects(payload: Any) -> list[dict]:
    """ClaimReview-typed mappings at the top level, in lists, or in @graph."""
    found: list[dict] = []
    if isinstance(payload, list):
        for item in payload:
            found.extend(_claim_review_objects(item))
    elif isinstance(payload, dict):
        if _SCHEMA_TYPE in _types_of(payload):
            found.append(payload)
        for item in payload.get("@graph", []) if isinstance(payload.get("@graph"), list) else []:
            found.extend(_claim_review_objects(item))
    return found


def _types_of(obj: dict) -> list[str]:
    declared = obj.get("@type", obj.get("type", ""))
    if isinstance(declared, list):
        return [str(t) for t in declared]
    return [str(declared)]


def _review_from_mapping(obj: dict, url: str, fallback_title: str) -> _Review:
    rating = obj.get("reviewRating") or {}
    if not isinstance(rating, dict):
        rating = {}
    return _Review(
        claim_text=_as_text(obj.get("claimReviewed")),
        review_url=_as_text(obj.get("url")) or url,
        review_title=_as_text(obj.get("name") or obj.get("headline")) or fallback_title,
        claimant=_claimant_of(obj) or None,
        date_published=_as_text(obj.get("datePublished")) or None,
        rating_value=_as_number(rating.get("ratingValue")),
        best_rating=_as_number(rating.get("bestRating")),
        worst_rating=_as_number(rating.get("worstRating")),
        rating_label=_as_text(rating.get("alternateName")) or None,
    )


def _claimant_of(obj: dict) -> str:
    item = obj.get("itemReviewed")
    if isinstance(item, list):
        item = item[0] if item else None
    if not isinstance(item, dict):
        return ""
    author = item.get("author")
    if isinstance(author, list):
        author = author[0] if author else None
    if isinstance(author, dict):
        return _as_text(author.get("name"))
    return _as_text(author)


def _as_text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, dict):
        value = value.get("@value", "")
    return collapse_ws(str(value))


def _as_number(value: Any) -> float | None:
    if value is None:
        return None
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(str(value).strip())
    except ValueError:
        return None


# --- Microdata ---------------------------------------------------------------


def _reviews_from_microdata(root: Element, url: str, fallback_title: str) -> list[_Review]:
    reviews = []
    for element in root.iter():
        if "itemscope" not in element.attrs:
            continue
        itemtype = element.attr("itemtype") or ""
        if not itemtype.rstrip("/").endswith(_SCHEMA_TYPE):
            continue
        item = _microdata_item(element)
        reviews.append(_review_from_mapping(_microdata_to_mapping(item), url, fallback_title))
    return reviews


def _microdata_item(scope: Element) -> dict[str, Any]:
    """Collect itemprops belonging to this scope; nested scopes become dicts."""
    props: dict[str, Any] = {}

    def walk(element: Element) -> None:
        for child in element.children:
            if not isinstance(child, Element):
                continue
            name = child.attr("itemprop")
            if name:
                if "itemscope" in child.attrs:
                    value: Any = _microdata_item(child)
                else:
                    value = _microdata_value(child)
                if name not in props:  # first occurrence wins
                    props[name] = value
                if "itemscope" in child.attrs:
                    continue  # nested scope owns its own props
            if "itemscope" in child.attrs and not name:
                continue
            walk(child)

    walk(scope)
    return props


def _microdata_value(element: Element) -> str:
    if element.tag == "meta":
        return element.attr("content") or ""
    if element.tag in ("a", "link", "area"):
        return element.attr("href") or ""
    if element.tag == "time":
        return element.attr("datetime") or element.text()
    return collapse_ws(element.text())


def _microdata_to_mapping(item: dict[str, Any]) -> dict[str, Any]:
    """Reshape a microdata property bag into the JSON-LD field names."""
    mapping: dict[str, Any] = {
        "claimReviewed": item.get("claimReviewed"),
        "url": item.get("url"),
        "name": item.get("name") or item.get("headline"),
        "datePublished": item.get("datePublished"),
    }
    rating = item.get("reviewRating")
    if isinstance(rating, dict):
        mapping["reviewRating"] = {
            "ratingValue": rating.get("ratingValue"),
            "bestRating": rating.get("bestRating"),
            "worstRating": rating.get("worstRating"),
            "alternateName": rating.get("alternateName"),
        }
    reviewed = item.get("itemReviewed")
    if isinstance(reviewed, dict):
        author = reviewed.get("author")
        mapping["itemReviewed"] = {
            "author": author if isinstance(author, (dict, str)) else None
        }
    return mapping


# --- Template-rule fallback ----------------------------------------------------


def _review_from_rules(root: Element, doc: RawDocument, template: SourceTemplate) -> _Review | None:
    values: dict[str, str] = {}
    for rule in template.extraction_rules:
        if rule.field in values:
            continue  # ordered rules: first successful extraction wins
        for element in select(root, rule.selector):
            raw = element.attr(rule.attribute) if rule.attribute else element.text()
            if raw and raw.strip():
                values[rule.field] = collapse_ws(raw)
                break
    if "claim_text" not in values:
        return None
    return _Review(
        claim_text=values["claim_text"],
        review_url=values.get("review_url", doc.url),
        review_title=values.get("review_title", page_title(root)),
        claimant=values.get("claimant"),
        date_published=values.get("date_published"),
        rating_value=_as_number(values.get("rating_value")),
        best_rating=_as_number(values.get("best_rating")),
        worst_rating=_as_number(values.get("worst_rating")),
        rating_label=values.get("rating_label"),
    )
