"""Search engine for fact-checked claims.

Pipeline: ingest fact-checker pages -> normalize verdicts -> enrich with
language/entities -> index for faceted, deterministic full-text search.
"""

__version__ = "0.1.0"
