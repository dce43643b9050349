from __future__ import annotations

from untrue.enrich.language import MIN_TEXT_LENGTH, SUPPORTED_LANGUAGES, detect_language

PT_PARAGRAPH = (
    "As agências de checagem brasileiras publicaram nesta semana uma série de "
    "verificações sobre boatos que circulam nas redes sociais, mostrando que a "
    "maioria das mensagens compartilhadas não tem qualquer fundamento."
)


def test_english_sentence_detected():
    lang, confidence = detect_language(
        "Crime in Germany is up 10% plus since migrants were accepted"
    )
    assert lang == "en"
    assert 0.0 < confidence <= 1.0


def test_empty_text_is_undetermined_with_zero_confidence():
    assert detect_language("") == ("und", 0.0)


def test_long_portuguese_paragraph_detected():
    assert len(PT_PARAGRAPH) >= 200
    lang, confidence = detect_language(PT_PARAGRAPH)
    assert lang == "pt"
    assert confidence > 0.0


def test_german_detected():
    lang, _ = detect_language(
        "Die Behauptung über die Kriminalität in Deutschland ist frei erfunden"
    )
    assert lang == "de"


def test_short_texts_are_undetermined():
    short = "Nur 3% sind echt"
    assert len(short.strip()) < MIN_TEXT_LENGTH
    assert detect_language(short) == ("und", 0.0)
    assert detect_language("hi") == ("und", 0.0)


def test_detection_is_deterministic():
    text = "The quick brown fox jumps over the lazy dog near the river bank"
    assert detect_language(text) == detect_language(text)


def test_confidence_always_in_unit_interval():
    samples = [
        "a",
        "numbers 1234567890 1234567890",
        "Das ist eine ganz normale deutsche Nachricht über Politik",
        "Uma notícia completamente normal sobre política brasileira",
        "A completely ordinary English sentence about politics",
    ]
    for text in samples:
        lang, confidence = detect_language(text)
        assert 0.0 <= confidence <= 1.0
        assert lang in SUPPORTED_LANGUAGES + ("und",)


def test_fixture_claims_match_template_default_language(enriched_claims, registry):
    """Detected language agrees with each source's declared language."""
    defaults = registry.default_languages()
    for claim in enriched_claims:
        assert claim.language == defaults[claim.base.source_id]
