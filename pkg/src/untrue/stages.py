"""Pipeline stage actions: each stage reads its predecessor's file artifact.

The four stages mirror the CLI subcommands one-to-one, so any pipeline
failure can be reproduced in isolation from the command line.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from untrue.enrich.enricher import EnrichedClaim, enrich
from untrue.enrich.entities import EntityGazetteer
from untrue.index.search import SearchIndex
from untrue.ingest.archive import load_archive
from untrue.ingest.claimreview import UnparseableDocument, extract_claim_reviews
from untrue.ingest.templates import NoMatchingTemplate, TemplateRegistry
from untrue.records import ClaimRecord
from untrue.verdicts import LabelLexicon, RatingInfo, Verdict, normalize


def bundled_templates_dir() -> Path:
    return Path(str(resources.files("untrue.data").joinpath("templates")))


def load_registry(templates_dir: str | Path | None) -> TemplateRegistry:
    return TemplateRegistry.load_dir(templates_dir or bundled_templates_dir())


def load_lexicon(path: str | Path | None) -> LabelLexicon:
    return LabelLexicon.load(path) if path else LabelLexicon.bundled()


def load_gazetteer(path: str | Path | None) -> EntityGazetteer:
    return EntityGazetteer.load(path) if path else EntityGazetteer.bundled()


def _write_ndjson(path: str | Path, rows: list[dict]) -> None:
    lines = [json.dumps(row, ensure_ascii=False, sort_keys=True) for row in rows]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _read_ndjson(path: str | Path) -> list[dict]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            rows.append(json.loads(line))
    return rows


def run_ingest(
    archive: str | Path, out: str | Path, templates_dir: str | Path | None = None
) -> dict:
    """Archive -> claim records. Within one run the first record_id wins;
    later duplicates are counted, not kept."""
    registry = load_registry(templates_dir)
    result = load_archive(archive)
    records: list[ClaimRecord] = []
    seen: set[str] = set()
    report = {
        "documents": len(result.documents),
        "skipped_archive_records": result.skipped,
        "unmatched_documents": 0,
        "unparseable_documents": 0,
        "dropped_records": 0,
        "duplicate_records": 0,
        "records": 0,
    }
    for doc in result.documents:
        try:
            template = registry.match(doc.url)
        except NoMatchingTemplate:
            report["unmatched_documents"] += 1
            continue
        try:
            extraction = extract_claim_reviews(doc, template)
        except UnparseableDocument:
            report["unparseable_documents"] += 1
            continue
        report["dropped_records"] += extraction.dropped
        for record in extraction.records:
            if record.record_id in seen:
                report["duplicate_records"] += 1
                continue
            seen.add(record.record_id)
            records.append(record)
    report["records"] = len(records)
    _write_ndjson(out, [r.to_dict() for r in records])
    return report


def run_normalize(
    records_file: str | Path, out: str | Path, lexicon_path: str | Path | None = None
) -> dict:
    """Claim records -> records with a normalized verdict attached."""
    lexicon = load_lexicon(lexicon_path)
    rows = _read_ndjson(records_file)
    out_rows = []
    verdict_counts = {v.value: 0 for v in Verdict}
    for row in rows:
        rating = RatingInfo(
            rating_value=row.get("rating_value"),
            best_rating=row.get("best_rating"),
            worst_rating=row.get("worst_rating"),
            rating_label=row.get("rating_label"),
        )
        verdict = normalize(rating, lexicon)
        verdict_counts[verdict.value] += 1
        out_rows.append({**row, "verdict": verdict.value})
    _write_ndjson(out, out_rows)
    return {"records": len(out_rows), "verdicts": verdict_counts}


def run_enrich(
    normalized_file: str | Path,
    out: str | Path,
    gazetteer_path: str | Path | None = None,
    templates_dir: str | Path | None = None,
) -> dict:
    """Normalized records -> enriched claims (language, entities, year)."""
    gazetteer = load_gazetteer(gazetteer_path)
    defaults = load_registry(templates_dir).default_languages()
    rows = _read_ndjson(normalized_file)
    out_rows = []
    language_counts: dict[str, int] = {}
    for row in rows:
        verdict = Verdict(row.pop("verdict"))
        record = ClaimRecord.from_dict(row)
        claim = enrich(record, verdict, gazetteer, default_languages=defaults)
        language_counts[claim.language] = language_counts.get(claim.language, 0) + 1
        out_rows.append(claim.to_dict())
    _write_ndjson(out, out_rows)
    return {"records": len(out_rows), "languages": dict(sorted(language_counts.items()))}


def run_index(
    enriched_file: str | Path,
    snapshot_out: str | Path,
    gazetteer_path: str | Path | None = None,
) -> dict:
    """Enriched claims -> index snapshot file."""
    index = SearchIndex(gazetteer=load_gazetteer(gazetteer_path))
    for row in _read_ndjson(enriched_file):
        index.add_document(EnrichedClaim.from_dict(row))
    saved_at = index.save(snapshot_out)
    return {"documents": len(index), "snapshot": str(snapshot_out), "saved_at": saved_at}


class UnknownActionError(Exception):
    pass


def _action_for(name: str, params: dict):
    if name == "ingest":
        return lambda: run_ingest(
            params["archive"], params["out"], params.get("templates_dir")
        )
    if name == "normalize":
        return lambda: run_normalize(params["in"], params["out"], params.get("lexicon"))
    if name == "enrich":
        return lambda: run_enrich(
            params["in"], params["out"], params.get("gazetteer"), params.get("templates_dir")
        )
    if name == "index":
        return lambda: run_index(params["in"], params["out"], params.get("gazetteer"))
    raise UnknownActionError(f"no registered pipeline action named {name!r}")


def build_task_specs(task_configs) -> list:
    """Resolve declarative pipeline tasks into executable TaskSpecs."""
    from untrue.workflow import TaskSpec

    return [
        TaskSpec(
            task_id=entry.task_id,
            action=_action_for(entry.action, entry.params),
            deps=frozenset(entry.deps),
            max_retries=entry.max_retries,
            retry_delay=entry.retry_delay,
        )
        for entry in task_configs
    ]
