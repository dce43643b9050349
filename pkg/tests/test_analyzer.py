from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from untrue.index.analyzer import analyze


def test_punctuation_is_stripped():
    assert analyze("Greta Thunberg!") == ["greta", "thunberg"]


def test_empty_input():
    assert analyze("") == []


def test_segmentation_keeps_two_character_tokens_and_digits():
    assert analyze("Crime in Germany is up 10% plus") == [
        "crime",
        "in",
        "germany",
        "is",
        "up",
        "10",
        "plus",
    ]


def test_single_character_tokens_dropped():
    assert analyze("a b c ab") == ["ab"]


def test_accented_words_survive():
    assert analyze("Ministério da Educação") == ["ministério", "da", "educação"]


def test_underscore_is_a_boundary():
    assert analyze("foo_bar") == ["foo", "bar"]


@given(st.text(max_size=200))
def test_analyze_is_deterministic_lowercase_and_filtered(text):
    first = analyze(text)
    assert first == analyze(text)
    for token in first:
        assert token == token.lower()
        assert len(token) >= 2
