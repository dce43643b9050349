from __future__ import annotations

from datetime import date

from untrue.enrich.enricher import EnrichedClaim, enrich
from untrue.records import ClaimRecord
from untrue.verdicts import Verdict


def _record(claim_text, source_id="snopes", published=None):
    return ClaimRecord.build(
        claim_text=claim_text,
        review_url="https://example-review.org/x",
        review_title="title",
        source_id=source_id,
        country="US",
        date_published=published,
    )


def test_short_claim_falls_back_to_template_default_language(gazetteer):
    record = _record("Nur 3% sind echt", source_id="correctiv")
    claim = enrich(record, Verdict.FALSE, gazetteer, default_languages={"correctiv": "de"})
    assert claim.language == "de"


def test_short_claim_without_default_stays_undetermined(gazetteer):
    record = _record("Nur 3% sind echt", source_id="nowhere")
    claim = enrich(record, Verdict.FALSE, gazetteer, default_languages={})
    assert claim.language == "und"


def test_year_is_projected_from_date(gazetteer):
    record = _record("A long enough claim about something", published=date(2016, 3, 1))
    claim = enrich(record, Verdict.OTHER, gazetteer)
    assert claim.year == 2016


def test_missing_date_leaves_year_unset(gazetteer):
    claim = enrich(_record("A long enough claim about something"), Verdict.OTHER, gazetteer)
    assert claim.year is None


def test_entities_found_with_correct_offsets(gazetteer):
    record = _record("Greta Thunberg spoke about the climate yesterday")
    claim = enrich(record, Verdict.OTHER, gazetteer)
    assert len(claim.entities) == 1
    mention = claim.entities[0]
    assert record.claim_text[mention.start : mention.end] == mention.surface == "Greta Thunberg"


def test_translations_start_empty(gazetteer):
    claim = enrich(_record("A long enough claim about something"), Verdict.OTHER, gazetteer)
    assert claim.translations == {}


def test_enrich_is_deterministic(gazetteer):
    record = _record("Greta Thunberg was seen in Germany", published=date(2019, 1, 1))
    first = enrich(record, Verdict.MIXED, gazetteer, default_languages={"snopes": "en"})
    second = enrich(record, Verdict.MIXED, gazetteer, default_languages={"snopes": "en"})
    assert first.to_dict() == second.to_dict()


def test_enriched_claim_round_trips_through_dict(gazetteer):
    record = _record("Greta Thunberg was seen in Germany", published=date(2019, 1, 1))
    claim = enrich(record, Verdict.MIXED, gazetteer)
    restored = EnrichedClaim.from_dict(claim.to_dict())
    assert restored.to_dict() == claim.to_dict()
    assert restored.problems() == []


def test_fixture_corpus_claims_satisfy_invariants(enriched_claims):
    for claim in enriched_claims:
        assert claim.problems() == []
        assert claim.base.problems() == []
