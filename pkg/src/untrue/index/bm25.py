"""BM25 term scoring with fixed parameters k1=1.2, b=0.75."""

from __future__ import annotations

import math

K1 = 1.2
B = 0.75


def bm25_score(tf: float, df: int, n_docs: int, doc_len: int, avg_doc_len: float) -> float:
    """Score one term's contribution to one document.

    idf = ln(1 + (N - df + 0.5) / (df + 0.5)); the +1 keeps idf positive for
    terms present in most documents.
    """
    if n_docs < 1:
        raise ValueError("corpus size must be >= 1")
    if df < 1:
        raise ValueError("document frequency must be >= 1")
    if doc_len < 1:
        raise ValueError("document length must be >= 1")
    if avg_doc_len <= 0:
        raise ValueError("average document length must be > 0")
    if tf < 0:
        raise ValueError("term frequency must be >= 0")

    idf = math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))
    return idf * (tf * (K1 + 1.0)) / (tf + K1 * (1.0 - B + B * doc_len / avg_doc_len))
