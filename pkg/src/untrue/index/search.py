"""In-memory inverted index over enriched claims.

Searching is a pure function of (index contents, query): no session, user or
history input exists in the signature, so two identical queries always return
identical pages (the elapsed time aside). Writes are serialized; readers see
either the pre- or post-state of an insert, never a partial posting update.
"""

from __future__ import annotations

import json
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

from untrue.enrich.enricher import EnrichedClaim
from untrue.enrich.entities import EntityGazetteer, link_entities
from untrue.enrich.translate import ProviderError, Translator
from untrue.index.analyzer import analyze
from untrue.index.bm25 import bm25_score
from untrue.verdicts import Verdict

SNAPSHOT_FORMAT = "untrue-index-snapshot"
SNAPSHOT_VERSION = 1

MAX_PAGE_SIZE = 100
EXCERPT_LENGTH = 200

ENTITY_MATCH_BONUS = 1.0

FACET_NAMES = ("verdict", "language", "source", "country", "year")
UNKNOWN_YEAR = "unknown"


class SnapshotError(Exception):
    pass


@dataclass(frozen=True)
class Query:
    text: str = ""
    verdicts: frozenset[Verdict] | None = None
    languages: frozenset[str] | None = None
    sources: frozenset[str] | None = None
    countries: frozenset[str] | None = None
    year_from: int | None = None
    year_to: int | None = None
    display_language: str | None = None
    page: int = 0
    page_size: int = 10
    expand_entities: bool = False

    def validate(self) -> None:
        if self.page < 0:
            raise ValueError("page must be >= 0")
        if not (1 <= self.page_size <= MAX_PAGE_SIZE):
            raise ValueError(f"page_size must be in 1..{MAX_PAGE_SIZE}")
        if self.verdicts is not None and not all(isinstance(v, Verdict) for v in self.verdicts):
            raise ValueError("verdict filter values must be Verdicts")
        if (
            self.year_from is not None
            and self.year_to is not None
            and self.year_from > self.year_to
        ):
            raise ValueError("year_from must not exceed year_to")


@dataclass(frozen=True)
class Expansion:
    entity_ids: tuple[str, ...] = ()
    added_terms: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"entity_ids": list(self.entity_ids), "added_terms": list(self.added_terms)}


def cross_language_expand(query: Query, gazetteer: EntityGazetteer) -> Expansion:
    """Entities linked in the query text, plus all their aliases as terms.

    The alias terms bridge languages: a query naming an entity in one
    language also matches documents naming it in any other supported one.
    """
    mentions = link_entities(query.text, gazetteer)
    entity_ids = sorted({m.entity_id for m in mentions})
    terms: set[str] = set()
    for entity_id in entity_ids:
        for alias in gazetteer.aliases_of(entity_id):
            terms.update(analyze(alias))
    return Expansion(entity_ids=tuple(entity_ids), added_terms=tuple(sorted(terms)))


@dataclass
class ResultPage:
    total_hits: int
    elapsed_ms: float
    page: int
    page_size: int
    hits: list[dict]
    facet_counts: dict[str, dict[str, int]]
    expansion: Expansion | None = None

    def to_dict(self) -> dict:
        return {
            "total_hits": self.total_hits,
            "elapsed_ms": self.elapsed_ms,
            "page": self.page,
            "page_size": self.page_size,
            "hits": self.hits,
            "facet_counts": self.facet_counts,
            "expansion": self.expansion.to_dict() if self.expansion else None,
        }


@dataclass
class IndexedClaim:
    doc_id: int
    enriched: EnrichedClaim
    tokens: list[str] = field(default_factory=list)
    claimant_tokens: list[str] = field(default_factory=list)
    entity_ids: frozenset[str] = frozenset()

    @property
    def length(self) -> int:
        return len(self.tokens) + len(self.claimant_tokens)


class _RWLock:
    """Many readers or one writer; writers wait for readers to drain."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writing = False

    def acquire_read(self):
        with self._cond:
            while self._writing:
                self._cond.wait()
            self._readers += 1

    def release_read(self):
        with self._cond:
            self._readers -= 1
            if self._readers == 0:
                self._cond.notify_all()

    def acquire_write(self):
        with self._cond:
            while self._writing or self._readers:
                self._cond.wait()
            self._writing = True

    def release_write(self):
        with self._cond:
            self._writing = False
            self._cond.notify_all()


def make_excerpt(text: str, limit: int = EXCERPT_LENGTH) -> str:
    if len(text) <= limit:
        return text
    cut = text.rfind(" ", 0, limit)
    if cut <= 0:
        cut = limit
    return text[:cut] + "..."


def _index_claim(doc_id: int, claim: EnrichedClaim) -> IndexedClaim:
    base = claim.base
    return IndexedClaim(
        doc_id=doc_id,
        enriched=claim,
        tokens=analyze(base.claim_text + " " + base.review_title, claim.language),
        claimant_tokens=analyze(base.claimant or "", claim.language),
        entity_ids=frozenset(m.entity_id for m in claim.entities),
    )


class SearchIndex:
    """Single-writer, multi-reader index with facet tables and snapshots."""

    def __init__(
        self,
        gazetteer: EntityGazetteer | None = None,
        translator: Translator | None = None,
        entity_bonus: float = ENTITY_MATCH_BONUS,
    ):
        self._gazetteer = gazetteer
        self._translator = translator
        self._entity_bonus = entity_bonus
        self._lock = _RWLock()
        self._docs: dict[int, IndexedClaim] = {}
        self._by_record: dict[str, int] = {}
        self._postings: dict[str, dict[int, int]] = {}
        self._facets: dict[str, dict[str, set[int]]] = {name: {} for name in FACET_NAMES}
        self._entity_docs: dict[str, set[int]] = {}
        self._total_length = 0
        self._next_doc_id = 0
        self.snapshot_saved_at: str | None = None

    # --- write path ---------------------------------------------------------

    def add_document(self, claim: EnrichedClaim) -> int:
        """Index one claim; visible to every search issued after this returns.

        Re-adding a record_id replaces the prior version under its doc_id.
        """
        problems = claim.problems() + claim.base.problems()
        if problems:
            raise ValueError(f"claim violates invariants: {'; '.join(problems)}")
        self._lock.acquire_write()
        try:
            record_id = claim.base.record_id
            doc_id = self._by_record.get(record_id)
            if doc_id is not None:
                self._remove_doc(doc_id)
            else:
                doc_id = self._next_doc_id
                self._next_doc_id += 1
            self._insert_doc(_index_claim(doc_id, claim))
            self._by_record[record_id] = doc_id
            return doc_id
        finally:
            self._lock.release_write()

    def _insert_doc(self, doc: IndexedClaim) -> None:
        self._docs[doc.doc_id] = doc
        for token, count in Counter(doc.tokens + doc.claimant_tokens).items():
            self._postings.setdefault(token, {})[doc.doc_id] = count
        for name, value in self._facet_values(doc):
            self._facets[name].setdefault(value, set()).add(doc.doc_id)
        for entity_id in doc.entity_ids:
            self._entity_docs.setdefault(entity_id, set()).add(doc.doc_id)
        self._total_length += doc.length

    def _remove_doc(self, doc_id: int) -> None:
        doc = self._docs.pop(doc_id)
        for token in set(doc.tokens + doc.claimant_tokens):
            bucket = self._postings.get(token)
            if bucket is not None:
                bucket.pop(doc_id, None)
                if not bucket:
                    del self._postings[token]
        for name, value in self._facet_values(doc):
            bucket = self._facets[name].get(value)
            if bucket is not None:
                bucket.discard(doc_id)
                if not bucket:
                    del self._facets[name][value]
        for entity_id in doc.entity_ids:
            bucket = self._entity_docs.get(entity_id)
            if bucket is not None:
                bucket.discard(doc_id)
                if not bucket:
                    del self._entity_docs[entity_id]
        self._total_length -= doc.length

    @staticmethod
    def _facet_values(doc: IndexedClaim) -> list[tuple[str, str]]:
        claim = doc.enriched
        return [
            ("verdict", claim.verdict.value),
            ("language", claim.language),
            ("source", claim.base.source_id),
            ("country", claim.base.country),
            ("year", str(claim.year) if claim.year is not None else UNKNOWN_YEAR),
        ]

    # --- read path ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._docs)

    def get(self, record_id: str) -> EnrichedClaim | None:
        self._lock.acquire_read()
        try:
            doc_id = self._by_record.get(record_id)
            return self._docs[doc_id].enriched if doc_id is not None else None
        finally:
            self._lock.release_read()

    def documents(self) -> Iterator[EnrichedClaim]:
        self._lock.acquire_read()
        try:
            docs = [self._docs[doc_id].enriched for doc_id in sorted(self._docs)]
        finally:
            self._lock.release_read()
        return iter(docs)

    def search(self, query: Query) -> ResultPage:
        """Faceted BM25 search; see the module docstring for the purity contract."""
        query.validate()
        started = time.perf_counter()
        self._lock.acquire_read()
        try:
            page = self._search_locked(query)
        finally:
            self._lock.release_read()
        page.elapsed_ms = (time.perf_counter() - started) * 1000.0
        return page

    def _search_locked(self, query: Query) -> ResultPage:
        terms = sorted(set(analyze(query.text)))
        expansion: Expansion | None = None
        if query.expand_entities and self._gazetteer is not None:
            expansion = cross_language_expand(query, self._gazetteer)
            terms = sorted(set(terms) | set(expansion.added_terms))

        query_entities = set(expansion.entity_ids) if expansion else set()
        candidates: set[int] = set()
        for term in terms:
            candidates.update(self._postings.get(term, ()))
        for entity_id in query_entities:
            candidates.update(self._entity_docs.get(entity_id, ()))
        if not terms and not query_entities:
            # Browse mode: no text evidence at all, so every document matches.
            candidates = set(self._docs)

        filtered = [doc_id for doc_id in candidates if self._passes_filters(doc_id, query)]

        n_docs = len(self._docs)
        avg_len = (self._total_length / n_docs) if n_docs else 0.0
        scored: list[tuple[float, int]] = []
        for doc_id in filtered:
            doc = self._docs[doc_id]
            score = 0.0
            for term in terms:
                tf = self._postings.get(term, {}).get(doc_id, 0)
                if tf:
                    score += bm25_score(tf, len(self._postings[term]), n_docs, doc.length, avg_len)
            if query_entities:
                score += self._entity_bonus * len(query_entities & doc.entity_ids)
            scored.append((score, doc_id))
        scored.sort(key=lambda pair: (-pair[0], pair[1]))

        facet_counts = self._count_facets(filtered)
        start = query.page * query.page_size
        window = scored[start : start + query.page_size]
        hits = [self._hit(doc_id, score, query) for score, doc_id in window]
        return ResultPage(
            total_hits=len(scored),
            elapsed_ms=0.0,
            page=query.page,
            page_size=query.page_size,
            hits=hits,
            facet_counts=facet_counts,
            expansion=expansion,
        )

    def _passes_filters(self, doc_id: int, query: Query) -> bool:
        claim = self._docs[doc_id].enriched
        if query.verdicts is not None and claim.verdict not in query.verdicts:
            return False
        if query.languages is not None and claim.language not in query.languages:
            return False
        if query.sources is not None and claim.base.source_id not in query.sources:
            return False
        if query.countries is not None and claim.base.country not in query.countries:
            return False
        if query.year_from is not None or query.year_to is not None:
            if claim.year is None:
                return False
            if query.year_from is not None and claim.year < query.year_from:
                return False
            if query.year_to is not None and claim.year > query.year_to:
                return False
        return True

    def _count_facets(self, doc_ids: list[int]) -> dict[str, dict[str, int]]:
        counters: dict[str, Counter] = {name: Counter() for name in FACET_NAMES}
        for doc_id in doc_ids:
            for name, value in self._facet_values(self._docs[doc_id]):
                counters[name][value] += 1
        counts: dict[str, dict[str, int]] = {}
        for name in FACET_NAMES:
            if name == "year":
                ordered = sorted(counters[name], key=lambda v: (v == UNKNOWN_YEAR, v))
            else:
                ordered = sorted(counters[name])
            counts[name] = {value: counters[name][value] for value in ordered}
        return counts

    def _hit(self, doc_id: int, score: float, query: Query) -> dict:
        claim = self._docs[doc_id].enriched
        base = claim.base
        excerpt = make_excerpt(base.claim_text)
        hit = {
            "record_id": base.record_id,
            "score": score,
            "verdict": claim.verdict.value,
            "review_title": base.review_title,
            "date_published": base.date_published.isoformat() if base.date_published else None,
            "country": base.country,
            "review_url": base.review_url,
            "excerpt": excerpt,
            "language": claim.language,
        }
        target = query.display_language
        if target and target != claim.language and self._translator is not None:
            try:
                title = self._translator.translate(base.review_title, claim.language, target)
                body = self._translator.translate(excerpt, claim.language, target)
            except (ProviderError, ValueError):
                return hit  # translation absent, record stays usable
            hit["translated"] = {
                "language": target,
                "review_title": title.text,
                "excerpt": body.text,
                "provenance": (
                    title.provenance
                    if title.provenance == body.provenance
                    else "untranslated"
                ),
            }
        return hit

    # --- persistence -----------------------------------------------------------

    def save(self, path: str | Path) -> str:
        """Write a snapshot; loading it reproduces search results exactly."""
        self._lock.acquire_read()
        try:
            saved_at = datetime.now(timezone.utc).isoformat()
            payload = {
                "format": SNAPSHOT_FORMAT,
                "version": SNAPSHOT_VERSION,
                "saved_at": saved_at,
                "next_doc_id": self._next_doc_id,
                "documents": [
                    {"doc_id": doc_id, "claim": self._docs[doc_id].enriched.to_dict()}
                    for doc_id in sorted(self._docs)
                ],
                "postings": {
                    token: sorted(bucket.items())
                    for token, bucket in sorted(self._postings.items())
                },
                "facets": {
                    name: {value: sorted(ids) for value, ids in sorted(table.items())}
                    for name, table in self._facets.items()
                },
            }
        finally:
            self._lock.release_read()
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8"
        )
        self.snapshot_saved_at = saved_at
        return saved_at

    @classmethod
    def load(
        cls,
        path: str | Path,
        gazetteer: EntityGazetteer | None = None,
        translator: Translator | None = None,
        entity_bonus: float = ENTITY_MATCH_BONUS,
    ) -> "SearchIndex":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SnapshotError(f"cannot read snapshot {path}: {exc}") from exc
        if payload.get("format") != SNAPSHOT_FORMAT:
            raise SnapshotError(f"not an index snapshot: {path}")
        if payload.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(f"unsupported snapshot version {payload.get('version')}")

        index = cls(gazetteer=gazetteer, translator=translator, entity_bonus=entity_bonus)
        index._next_doc_id = payload["next_doc_id"]
        for entry in payload["documents"]:
            doc = _index_claim(entry["doc_id"], EnrichedClaim.from_dict(entry["claim"]))
            index._docs[doc.doc_id] = doc
            index._by_record[doc.enriched.base.record_id] = doc.doc_id
            for entity_id in doc.entity_ids:
                index._entity_docs.setdefault(entity_id, set()).add(doc.doc_id)
            index._total_length += doc.length
        index._postings = {
            token: {int(doc_id): tf for doc_id, tf in pairs}
            for token, pairs in payload["postings"].items()
        }
        index._facets = {
            name: {value: set(ids) for value, ids in table.items()}
            for name, table in payload["facets"].items()
        }
        for name in FACET_NAMES:
            index._facets.setdefault(name, {})
        index.snapshot_saved_at = payload.get("saved_at")
        return index
