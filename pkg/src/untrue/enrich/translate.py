"""Pluggable translation providers with a shared result cache.

The built-in default provider performs no translation (identity text, flagged
"untranslated"); the dictionary provider applies a fixed phrase table and is
meant for tests and offline demos. Results are cached by
(provider, from, to, text-hash); the cache is the only mutable structure and
is safe for concurrent use.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

UNTRANSLATED = "untranslated"
TRANSLATED = "translated"


class ProviderError(Exception):
    """Transport or quota failure inside a provider; translation stays absent."""


@dataclass(frozen=True)
class Translation:
    text: str
    provenance: str  # "translated" | "untranslated"


class TranslationProvider(Protocol):
    name: str

    def translate(self, text: str, source: str, target: str) -> Translation: ...


class IdentityProvider:
    """Offline default: returns the input unchanged."""

    name = "identity"

    def translate(self, text: str, source: str, target: str) -> Translation:
        return Translation(text=text, provenance=UNTRANSLATED)


class DictionaryProvider:
    """Fixed phrase table keyed by (from, to); deterministic test provider."""

    name = "dictionary"

    def __init__(self, table: dict[str, dict[str, dict[str, str]]]):
        # table[from][to][phrase] = translated phrase
        self._table = table

    @classmethod
    def load(cls, path: str | Path) -> "DictionaryProvider":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    def translate(self, text: str, source: str, target: str) -> Translation:
        phrases = self._table.get(source, {}).get(target, {})
        lowered = {phrase.strip().lower(): out for phrase, out in phrases.items()}
        whole = lowered.get(text.strip().lower())
        if whole is not None:
            return Translation(text=whole, provenance=TRANSLATED)

        result = text
        changed = False
        for phrase in sorted(phrases, key=lambda p: (-len(p), p)):
            pattern = re.compile(re.escape(phrase), re.IGNORECASE)
            result, count = pattern.subn(phrases[phrase], result)
            changed = changed or count > 0
        return Translation(text=result, provenance=TRANSLATED if changed else UNTRANSLATED)


class FailingProvider:
    """Always raises; stands in for an unreachable remote service."""

    name = "failing"

    def translate(self, text: str, source: str, target: str) -> Translation:
        raise ProviderError("translation service unavailable")


class Translator:
    """Caches provider results; identical requests hit the provider once."""

    def __init__(self, provider: TranslationProvider | None = None):
        self.provider = provider or IdentityProvider()
        self._cache: dict[tuple[str, str, str, str], Translation] = {}
        self._lock = threading.Lock()

    def translate(self, text: str, source: str, target: str) -> Translation:
        if source == target:
            raise ValueError("source and target language must differ")
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        key = (self.provider.name, source, target, digest)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = self.provider.translate(text, source, target)
        with self._lock:
            self._cache[key] = result  # last write wins on identical keys
        return result
