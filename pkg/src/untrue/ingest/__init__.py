"""Acquisition and extraction of fact-checker pages into claim records."""

from untrue.ingest.archive import ArchiveError, ArchiveResult, load_archive
from untrue.ingest.claimreview import ExtractionResult, UnparseableDocument, extract_claim_reviews
from untrue.ingest.fetch import FetchError, Fetcher, Politeness, WhitelistViolation
from untrue.ingest.templates import (
    AmbiguousTemplate,
    ExtractionRule,
    NoMatchingTemplate,
    SourceTemplate,
    TemplateRegistry,
    match_template,
)

__all__ = [
    "ArchiveError",
    "ArchiveResult",
    "load_archive",
    "ExtractionResult",
    "UnparseableDocument",
    "extract_claim_reviews",
    "FetchError",
    "Fetcher",
    "Politeness",
    "WhitelistViolation",
    "AmbiguousTemplate",
    "ExtractionRule",
    "NoMatchingTemplate",
    "SourceTemplate",
    "TemplateRegistry",
    "match_template",
]
