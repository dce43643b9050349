from __future__ import annotations

import hashlib
from datetime import date, datetime, timedelta, timezone

from untrue.records import (
    ClaimRecord,
    RawDocument,
    collapse_ws,
    parse_published_date,
    record_id_for,
)


def test_record_id_matches_independent_hash():
    url = "https://example.org/check"
    claim = "The moon is made of cheese"
    expected = hashlib.sha256(f"{url}\n{claim}".encode()).hexdigest()
    assert record_id_for(url, claim) == expected


def test_record_id_is_deterministic_and_lowercase_hex():
    a = record_id_for("https://x.org/a", "claim")
    b = record_id_for("https://x.org/a", "claim")
    assert a == b
    assert a == a.lower()
    assert len(a) == 64


def test_record_id_distinct_for_distinct_inputs():
    assert record_id_for("https://x.org/a", "claim") != record_id_for("https://x.org/b", "claim")
    assert record_id_for("https://x.org/a", "claim") != record_id_for("https://x.org/a", "other")


def test_parse_published_date_iso_forms():
    assert parse_published_date("2016-03-01") == date(2016, 3, 1)
    assert parse_published_date("2016-03-01T10:30:00+00:00") == date(2016, 3, 1)
    assert parse_published_date("2016-03-01T10:30:00Z") == date(2016, 3, 1)


def test_parse_published_date_textual_form():
    assert parse_published_date("August 2, 2015") == date(2015, 8, 2)
    assert parse_published_date("Aug 2, 2015") == date(2015, 8, 2)


def test_parse_published_date_never_guesses():
    assert parse_published_date("last Tuesday") is None
    assert parse_published_date("02/03/2015") is None
    assert parse_published_date("") is None
    assert parse_published_date(None) is None


def test_collapse_ws():
    assert collapse_ws("  a\n  b\t c ") == "a b c"


def test_raw_document_invariants():
    now = datetime.now(timezone.utc)
    good = RawDocument("https://snopes.com/x", now - timedelta(days=1), 200, "text/html", b"x")
    assert good.problems() == []

    relative = RawDocument("/x", now - timedelta(days=1), 200, "text/html", b"x")
    assert relative.problems()

    future = RawDocument("https://snopes.com/x", now + timedelta(days=1), 200, "text/html", b"x")
    assert any("future" in p for p in future.problems())

    empty200 = RawDocument("https://snopes.com/x", now - timedelta(days=1), 200, "text/html", b"")
    assert any("empty body" in p for p in empty200.problems())

    empty404 = RawDocument("https://snopes.com/x", now - timedelta(days=1), 404, "text/html", b"")
    assert empty404.problems() == []


def test_claim_record_build_normalizes_and_hashes():
    record = ClaimRecord.build(
        claim_text="  Crime   is up\n10%  ",
        review_url="https://example.org/review",
        review_title=" A   title ",
    )
    assert record.claim_text == "Crime is up 10%"
    assert record.review_title == "A title"
    assert record.record_id == record_id_for("https://example.org/review", "Crime is up 10%")
    assert record.problems() == []


def test_claim_record_rating_invariants():
    bad_bounds = ClaimRecord.build(
        claim_text="c",
        review_url="https://x.org",
        rating_value=3.0,
        best_rating=1.0,
        worst_rating=5.0,
    )
    assert bad_bounds.problems()

    out_of_range = ClaimRecord.build(
        claim_text="c",
        review_url="https://x.org",
        rating_value=9.0,
        best_rating=5.0,
        worst_rating=1.0,
    )
    assert out_of_range.problems()

    partial = ClaimRecord.build(claim_text="c", review_url="https://x.org", rating_value=1.0)
    assert partial.problems() == []


def test_claim_record_round_trips_through_dict():
    record = ClaimRecord.build(
        claim_text="claim",
        review_url="https://x.org/r",
        review_title="title",
        source_id="snopes",
        country="US",
        claimant="Someone",
        date_published=date(2019, 11, 3),
        rating_value=1.0,
        best_rating=5.0,
        worst_rating=1.0,
        rating_label="False",
    )
    assert ClaimRecord.from_dict(record.to_dict()) == record
