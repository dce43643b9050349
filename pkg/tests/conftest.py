from __future__ import annotations

import json
from pathlib import Path

import pytest

from untrue.enrich.enricher import EnrichedClaim
from untrue.index.search import SearchIndex
from untrue.stages import (
    load_gazetteer,
    load_lexicon,
    load_registry,
    run_enrich,
    run_index,
    run_ingest,
    run_normalize,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def demo_archive() -> Path:
    return FIXTURES / "demo_archive.ndjson"


@pytest.fixture(scope="session")
def golden_records_path() -> Path:
    return FIXTURES / "golden_records.json"


@pytest.fixture(scope="session")
def registry():
    return load_registry(None)


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(None)


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer(None)


@pytest.fixture(scope="session")
def pipeline_artifacts(tmp_path_factory, demo_archive) -> dict[str, Path]:
    """The fixture corpus run through every stage once per session."""
    workdir = tmp_path_factory.mktemp("pipeline")
    paths = {
        "records": workdir / "records.ndjson",
        "normalized": workdir / "normalized.ndjson",
        "enriched": workdir / "enriched.ndjson",
        "snapshot": workdir / "index.json",
    }
    run_ingest(demo_archive, paths["records"])
    run_normalize(paths["records"], paths["normalized"])
    run_enrich(paths["normalized"], paths["enriched"])
    run_index(paths["enriched"], paths["snapshot"])
    return paths


@pytest.fixture(scope="session")
def enriched_claims(pipeline_artifacts) -> list[EnrichedClaim]:
    rows = [
        json.loads(line)
        for line in pipeline_artifacts["enriched"].read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    return [EnrichedClaim.from_dict(row) for row in rows]


@pytest.fixture()
def demo_index(pipeline_artifacts, gazetteer) -> SearchIndex:
    """A fresh index over the fixture corpus (loads the session snapshot)."""
    return SearchIndex.load(pipeline_artifacts["snapshot"], gazetteer=gazetteer)
