"""Text analysis: Unicode word segmentation, lowercasing, short-token drop.

No stemming and no stop words — the analyzer must treat English, Portuguese
and German symmetrically; cross-language recall comes from entity expansion
instead of morphology.
"""

from __future__ import annotations

import re

# Word characters without the underscore: segmentation happens on every
# non-alphanumeric boundary.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

MIN_TOKEN_LENGTH = 2


def analyze(text: str, language: str = "und") -> list[str]:
    """Deterministic token sequence for indexing and querying.

    The language tag is accepted for interface symmetry but does not change
    the analysis.
    """
    return [
        token
        for token in (m.group(0).lower() for m in _TOKEN_RE.finditer(text))
        if len(token) >= MIN_TOKEN_LENGTH
    ]
