"""Independent linear-scan scorer used as the ranking oracle.

Deliberately reimplements tokenization, entity linking and BM25 from the
stated rules (no imports from the index internals), scanning every document
on every query.
"""

from __future__ import annotations

import math

K1 = 1.2
B = 0.75
ENTITY_BONUS = 1.0


def oracle_tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        else:
            if current:
                tokens.append("".join(current))
                current = []
    if current:
        tokens.append("".join(current))
    return [t for t in tokens if len(t) >= 2]


def oracle_link_ids(text: str, gazetteer) -> set[str]:
    """Entity ids of the maximal non-overlapping alias matches."""
    lowered = text.lower()
    candidates = []
    for alias, entity_id in gazetteer.alias_pairs():
        needle = alias.lower()
        start = lowered.find(needle)
        while start != -1:
            end = start + len(needle)
            before_ok = start == 0 or not text[start - 1].isalnum()
            after_ok = end == len(text) or not text[end].isalnum()
            if before_ok and after_ok:
                candidates.append((start, end, entity_id))
            start = lowered.find(needle, start + 1)
    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], c[2]))
    kept = []
    for c in candidates:
        if all(c[1] <= k[0] or c[0] >= k[1] for k in kept):
            kept.append(c)
    return {entity_id for _, _, entity_id in kept}


def _doc_fields(claim) -> tuple[list[str], list[str]]:
    base = claim.base
    main = oracle_tokenize(base.claim_text + " " + base.review_title)
    claimant = oracle_tokenize(base.claimant or "")
    return main, claimant


def _bm25(tf, df, n, dl, avgdl):
    idf = math.log(1 + (n - df + 0.5) / (df + 0.5))
    return idf * tf * (K1 + 1) / (tf + K1 * (1 - B + B * dl / avgdl))


def _passes(claim, query) -> bool:
    if query.verdicts is not None and claim.verdict not in query.verdicts:
        return False
    if query.languages is not None and claim.language not in query.languages:
        return False
    if query.sources is not None and claim.base.source_id not in query.sources:
        return False
    if query.countries is not None and claim.base.country not in query.countries:
        return False
    if query.year_from is not None or query.year_to is not None:
        if claim.year is None:
            return False
        if query.year_from is not None and claim.year < query.year_from:
            return False
        if query.year_to is not None and claim.year > query.year_to:
            return False
    return True


def oracle_search(claims, query, gazetteer=None):
    """Ranked (record_id, score) pairs over claims given in insertion order."""
    terms = set(oracle_tokenize(query.text))
    query_entities: set[str] = set()
    if query.expand_entities and gazetteer is not None:
        query_entities = oracle_link_ids(query.text, gazetteer)
        for entity_id in sorted(query_entities):
            for alias in gazetteer.aliases_of(entity_id):
                terms.update(oracle_tokenize(alias))

    fields = [_doc_fields(claim) for claim in claims]
    lengths = [len(main) + len(extra) for main, extra in fields]
    n = len(claims)
    avgdl = (sum(lengths) / n) if n else 0.0

    def df(term: str) -> int:
        return sum(1 for main, extra in fields if term in main or term in extra)

    results = []
    for doc_id, claim in enumerate(claims):
        main, extra = fields[doc_id]
        doc_entities = {m.entity_id for m in claim.entities}
        matches_terms = any(t in main or t in extra for t in terms)
        matches_entities = bool(query_entities & doc_entities)
        browse = not terms and not query_entities
        if not (matches_terms or matches_entities or browse):
            continue
        if not _passes(claim, query):
            continue
        score = 0.0
        for term in sorted(terms):
            tf = main.count(term) + extra.count(term)
            if tf:
                score += _bm25(tf, df(term), n, lengths[doc_id], avgdl)
        score += ENTITY_BONUS * len(query_entities & doc_entities)
        results.append((score, doc_id, claim.base.record_id))
    results.sort(key=lambda r: (-r[0], r[1]))
    return [(record_id, score) for score, _, record_id in results]
