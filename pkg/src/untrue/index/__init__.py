"""Inverted index with BM25 ranking, facets and snapshot persistence."""

from untrue.index.analyzer import analyze
from untrue.index.bm25 import bm25_score
from untrue.index.search import Expansion, Query, ResultPage, SearchIndex, cross_language_expand

__all__ = [
    "analyze",
    "bm25_score",
    "Expansion",
    "Query",
    "ResultPage",
    "SearchIndex",
    "cross_language_expand",
]
