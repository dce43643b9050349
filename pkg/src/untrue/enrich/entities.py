"""Gazetteer-based entity linking: exact multilingual alias matching.

Aliases are matched case-insensitively on word boundaries; overlapping
candidates are resolved by longest span, then leftmost position.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class GazetteerError(Exception):
    pass


@dataclass(frozen=True)
class EntityMention:
    surface: str
    start: int
    end: int
    entity_id: str
    confidence: float

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "start": self.start,
            "end": self.end,
            "entity_id": self.entity_id,
            "confidence": self.confidence,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EntityMention":
        return cls(
            surface=data["surface"],
            start=data["start"],
            end=data["end"],
            entity_id=data["entity_id"],
            confidence=data["confidence"],
        )


class EntityGazetteer:
    """entity_id -> aliases per language; immutable after load."""

    def __init__(self, entries: dict[str, dict[str, list[str]]]):
        for entity_id, by_lang in entries.items():
            aliases = [a for langs in by_lang.values() for a in langs]
            if not aliases:
                raise GazetteerError(f"entity {entity_id!r} has no aliases")
            if any(not alias.strip() for alias in aliases):
                raise GazetteerError(f"entity {entity_id!r} has an empty alias")
        self._entries = entries
        # (alias, entity_id) pairs, deduplicated, deterministic order
        pairs = {
            (alias, entity_id)
            for entity_id, by_lang in entries.items()
            for aliases in by_lang.values()
            for alias in aliases
        }
        self._alias_pairs = sorted(pairs, key=lambda p: (-len(p[0]), p[0], p[1]))

    @classmethod
    def load(cls, path: str | Path) -> "EntityGazetteer":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def bundled(cls) -> "EntityGazetteer":
        data = json.loads(
            resources.files("untrue.data").joinpath("gazetteer.json").read_text(encoding="utf-8")
        )
        return cls(data)

    def __len__(self) -> int:
        return len(self._entries)

    def entity_ids(self) -> list[str]:
        return sorted(self._entries)

    def alias_pairs(self) -> list[tuple[str, str]]:
        return list(self._alias_pairs)

    def aliases_of(self, entity_id: str) -> list[str]:
        by_lang = self._entries.get(entity_id, {})
        return sorted({alias for aliases in by_lang.values() for alias in aliases})


def _word_bounded(text: str, start: int, end: int) -> bool:
    if start > 0 and text[start - 1].isalnum():
        return False
    if end < len(text) and text[end].isalnum():
        return False
    return True


def link_entities(text: str, gazetteer: EntityGazetteer) -> list[EntityMention]:
    """All non-overlapping alias matches, sorted by start offset.

    Candidates are ranked longest-span first, then leftmost, then by
    entity_id, and kept greedily; exact alias matches carry confidence 1.0.
    """
    if not text:
        return []
    candidates: list[tuple[int, int, str]] = []
    for alias, entity_id in gazetteer.alias_pairs():
        pattern = re.compile(re.escape(alias), re.IGNORECASE)
        for match in pattern.finditer(text):
            if _word_bounded(text, match.start(), match.end()):
                candidates.append((match.start(), match.end(), entity_id))

    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], c[2]))
    chosen: list[tuple[int, int, str]] = []
    for start, end, entity_id in candidates:
        if all(end <= s or start >= e for s, e, _ in chosen):
            chosen.append((start, end, entity_id))

    mentions = [
        EntityMention(
            surface=text[start:end],
            start=start,
            end=end,
            entity_id=entity_id,
            confidence=1.0,
        )
        for start, end, entity_id in sorted(chosen)
    ]
    return mentions
