"""Normalization of heterogeneous agency ratings to four verdict categories.

Numeric scales are rescaled to [0, 1] and snapped to five equally spaced
buckets; only the scale endpoints count as TRUE or FALSE, everything between
is MIXED. Textual labels go through a per-language lexicon; unknown labels
fall to OTHER rather than guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    MIXED = "mixed"
    OTHER = "other"


@dataclass(frozen=True)
class RatingInfo:
    rating_value: float | None = None
    best_rating: float | None = None
    worst_rating: float | None = None
    rating_label: str | None = None

    def has_complete_scale(self) -> bool:
        return (
            self.rating_value is not None
            and self.best_rating is not None
            and self.worst_rating is not None
        )

    def has_valid_scale(self) -> bool:
        if not self.has_complete_scale():
            return False
        return (
            self.worst_rating < self.best_rating  # type: ignore[operator]
            and self.worst_rating <= self.rating_value <= self.best_rating  # type: ignore[operator]
        )


class LexiconError(Exception):
    pass


class LabelLexicon:
    """Case-insensitive label -> Verdict mapping, grouped by language.

    Lookup ignores the language grouping; a label carrying two different
    verdicts anywhere in the file is a configuration error.
    """

    def __init__(self, entries_by_language: dict[str, dict[str, Verdict]]):
        self._by_language = {
            lang: {label.strip().lower(): verdict for label, verdict in table.items()}
            for lang, table in entries_by_language.items()
        }
        self._flat: dict[str, Verdict] = {}
        for lang in sorted(self._by_language):
            for label, verdict in self._by_language[lang].items():
                if not label:
                    raise LexiconError(f"empty label in language {lang!r}")
                existing = self._flat.get(label)
                if existing is not None and existing is not verdict:
                    raise LexiconError(
                        f"label {label!r} maps to both {existing.value} and {verdict.value}"
                    )
                self._flat[label] = verdict

    @classmethod
    def load(cls, path: str | Path) -> "LabelLexicon":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(_parse_lexicon(data))

    @classmethod
    def bundled(cls) -> "LabelLexicon":
        """The seed lexicon shipped with the package."""
        data = json.loads(
            resources.files("untrue.data").joinpath("lexicon.json").read_text(encoding="utf-8")
        )
        return cls(_parse_lexicon(data))

    def lookup(self, label: str) -> Verdict | None:
        return self._flat.get(label.strip().lower())

    def items(self):
        return self._flat.items()

    def __len__(self) -> int:
        return len(self._flat)


def _parse_lexicon(data: dict) -> dict[str, dict[str, Verdict]]:
    parsed: dict[str, dict[str, Verdict]] = {}
    for lang, table in data.items():
        parsed[lang] = {label: Verdict(value) for label, value in table.items()}
    return parsed


_BUCKETS = (0.0, 0.25, 0.5, 0.75, 1.0)


def normalize_numeric(rating: RatingInfo) -> Verdict:
    """Verdict from a complete numeric rating triple.

    The rating is rescaled to p in [0, 1] and snapped to the nearest of five
    buckets; exact midpoint ties resolve toward the bucket nearer 0.5, so the
    endpoints (TRUE/FALSE) are never over-claimed.
    """
    if not rating.has_complete_scale():
        raise ValueError("numeric rating requires value, best and worst")
    if not rating.has_valid_scale():
        raise ValueError(
            f"degenerate or out-of-range scale: value={rating.rating_value} "
            f"best={rating.best_rating} worst={rating.worst_rating}"
        )
    span = rating.best_rating - rating.worst_rating  # type: ignore[operator]
    p = (rating.rating_value - rating.worst_rating) / span  # type: ignore[operator]
    bucket = _snap(p)
    if bucket == 1.0:
        return Verdict.TRUE
    if bucket == 0.0:
        return Verdict.FALSE
    return Verdict.MIXED


def _snap(p: float) -> float:
    best = min(abs(p - bucket) for bucket in _BUCKETS)
    tied = [bucket for bucket in _BUCKETS if abs(p - bucket) == best]
    return min(tied, key=lambda bucket: abs(bucket - 0.5))


def normalize_label(label: str, lexicon: LabelLexicon) -> Verdict:
    """Lexicon lookup of a textual label; unknown labels are OTHER."""
    return lexicon.lookup(label) or Verdict.OTHER


def normalize(rating: RatingInfo, lexicon: LabelLexicon) -> Verdict:
    """Total normalization: numeric scale first, then label, then OTHER.

    A complete-but-invalid numeric triple cannot carry a verdict and falls
    through to the label path so that this function never fails.
    """
    if rating.has_valid_scale():
        return normalize_numeric(rating)
    if rating.rating_label is not None:
        return normalize_label(rating.rating_label, lexicon)
    return Verdict.OTHER
