"""Assembles EnrichedClaims: record + verdict + language + entity links."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from untrue.enrich.entities import EntityGazetteer, EntityMention, link_entities
from untrue.enrich.language import UNDETERMINED, detect_language
from untrue.records import ClaimRecord
from untrue.verdicts import Verdict


@dataclass
class EnrichedClaim:
    base: ClaimRecord
    verdict: Verdict
    language: str
    entities: list[EntityMention] = field(default_factory=list)
    translations: dict[str, str] = field(default_factory=dict)
    year: int | None = None

    def problems(self) -> list[str]:
        issues = []
        text = self.base.claim_text
        previous_end = 0
        for mention in self.entities:
            if not (0 <= mention.start < mention.end <= len(text)):
                issues.append(f"mention offsets out of bounds: {mention}")
            elif text[mention.start : mention.end] != mention.surface:
                issues.append(f"mention surface mismatch: {mention}")
            if mention.start < previous_end:
                issues.append(f"overlapping mentions at {mention.start}")
            previous_end = mention.end
        if self.language in self.translations:
            issues.append("translations contain the record's own language")
        return issues

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "verdict": self.verdict.value,
            "language": self.language,
            "entities": [m.to_dict() for m in self.entities],
            "translations": dict(self.translations),
            "year": self.year,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EnrichedClaim":
        return cls(
            base=ClaimRecord.from_dict(data["base"]),
            verdict=Verdict(data["verdict"]),
            language=data["language"],
            entities=[EntityMention.from_dict(m) for m in data.get("entities", [])],
            translations=dict(data.get("translations", {})),
            year=data.get("year"),
        )


def enrich(
    record: ClaimRecord,
    verdict: Verdict,
    gazetteer: EntityGazetteer,
    default_languages: Mapping[str, str] | None = None,
) -> EnrichedClaim:
    """Pure enrichment of one record.

    Language comes from detection over the claim text, falling back to the
    source template's default when detection is undetermined. Translations
    start empty; they are filled lazily at query time.
    """
    language, _confidence = detect_language(record.claim_text)
    if language == UNDETERMINED and default_languages:
        language = default_languages.get(record.source_id, UNDETERMINED)
    return EnrichedClaim(
        base=record,
        verdict=verdict,
        language=language,
        entities=link_entities(record.claim_text, gazetteer),
        translations={},
        year=record.date_published.year if record.date_published else None,
    )
