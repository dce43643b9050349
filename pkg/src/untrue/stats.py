"""Corpus statistics over an index: documents per language, source, year, verdict."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone

from untrue.index.search import SearchIndex
from untrue.verdicts import Verdict


@dataclass
class StatsReport:
    total_documents: int
    by_language: dict[str, int]
    by_source: dict[str, int]
    by_year: dict[tuple[int, str], int]
    by_verdict: dict[Verdict, int]
    generated_at: datetime

    def to_dict(self) -> dict:
        by_year_nested: dict[str, dict[str, int]] = {}
        for (year, language), count in sorted(self.by_year.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            by_year_nested.setdefault(language, {})[str(year)] = count
        return {
            "total_documents": self.total_documents,
            "by_language": dict(sorted(self.by_language.items())),
            "by_source": dict(sorted(self.by_source.items())),
            "by_year": by_year_nested,
            "by_verdict": {v.value: self.by_verdict.get(v, 0) for v in Verdict},
            "generated_at": self.generated_at.isoformat(),
        }


def compute_stats(index: SearchIndex) -> StatsReport:
    """Exact counts over all indexed documents.

    Documents without a publication year are left out of by_year but counted
    everywhere else, so by_year totals never exceed the per-language totals.
    """
    by_language: Counter = Counter()
    by_source: Counter = Counter()
    by_year: Counter = Counter()
    by_verdict: Counter = Counter()
    total = 0
    for claim in index.documents():
        total += 1
        by_language[claim.language] += 1
        by_source[claim.base.source_id] += 1
        by_verdict[claim.verdict] += 1
        if claim.year is not None:
            by_year[(claim.year, claim.language)] += 1
    return StatsReport(
        total_documents=total,
        by_language=dict(by_language),
        by_source=dict(by_source),
        by_year=dict(by_year),
        by_verdict=dict(by_verdict),
        generated_at=datetime.now(timezone.utc),
    )
