"""Language, entity and translation enrichment of claim records."""

from untrue.enrich.entities import EntityGazetteer, EntityMention, link_entities
from untrue.enrich.enricher import EnrichedClaim, enrich
from untrue.enrich.language import detect_language
from untrue.enrich.translate import (
    DictionaryProvider,
    IdentityProvider,
    ProviderError,
    Translation,
    Translator,
)

__all__ = [
    "EntityGazetteer",
    "EntityMention",
    "link_entities",
    "EnrichedClaim",
    "enrich",
    "detect_language",
    "DictionaryProvider",
    "IdentityProvider",
    "ProviderError",
    "Translation",
    "Translator",
]
