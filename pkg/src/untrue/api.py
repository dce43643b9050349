"""HTTP service: search, claim lookup, stats, pipeline triggering.

Privacy contract: responses never set cookies, no per-client state exists,
and the access log stores paths with the query string redacted at write
time. Every response body is a pure function of index contents and query
parameters, so identical requests get identical bodies (elapsed aside).
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

from fastapi import APIRouter, FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from untrue.config import AppConfig
from untrue.enrich.entities import EntityGazetteer
from untrue.enrich.translate import DictionaryProvider, IdentityProvider, Translator
from untrue.index.search import Query, SearchIndex, SnapshotError
from untrue.stages import build_task_specs, load_gazetteer
from untrue.stats import compute_stats
from untrue.verdicts import Verdict
from untrue.workflow import execute_dag

API_PREFIX = "/v1"


class AccessLog:
    """Append-only request log; query strings are redacted before writing."""

    def __init__(self, path: str | Path | None, retention_hours: float):
        self.path = Path(path) if path else None
        self.retention = timedelta(hours=retention_hours)
        self._lock = threading.Lock()

    def record(self, method: str, path: str, status: int) -> None:
        if self.path is None:
            return
        entry = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "method": method,
            "path": path,  # no query string, ever
            "status": status,
        }
        with self._lock:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(entry) + "\n")

    def scrub(self, now: datetime | None = None) -> int:
        """Drop entries older than the retention window; returns removed count."""
        if self.path is None or not self.path.exists():
            return 0
        cutoff = (now or datetime.now(timezone.utc)) - self.retention
        kept, removed = [], 0
        with self._lock:
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                try:
                    ts = datetime.fromisoformat(json.loads(line)["ts"])
                except (ValueError, KeyError, json.JSONDecodeError):
                    removed += 1
                    continue
                if ts >= cutoff:
                    kept.append(line)
                else:
                    removed += 1
            self.path.write_text("\n".join(kept) + ("\n" if kept else ""), encoding="utf-8")
        return removed


@dataclass
class ApiState:
    config: AppConfig
    index: SearchIndex | None
    gazetteer: EntityGazetteer
    translator: Translator
    access_log: AccessLog
    runs: dict[str, object] = field(default_factory=dict)
    run_order: list[str] = field(default_factory=list)
    run_lock: threading.Lock = field(default_factory=threading.Lock)


def _build_translator(config: AppConfig) -> Translator:
    if config.translation_provider == "dictionary":
        return Translator(DictionaryProvider.load(config.dictionary_path))
    return Translator(IdentityProvider())


def _load_index(config: AppConfig, gazetteer, translator) -> SearchIndex | None:
    if config.index_snapshot and Path(config.index_snapshot).exists():
        try:
            return SearchIndex.load(
                config.index_snapshot, gazetteer=gazetteer, translator=translator
            )
        except SnapshotError:
            return None
    return SearchIndex(gazetteer=gazetteer, translator=translator)


def _split_multi(values: list[str] | None) -> list[str]:
    out: list[str] = []
    for value in values or []:
        out.extend(part.strip() for part in value.split(",") if part.strip())
    return out


def _parse_int(raw: str | None, name: str) -> int | None:
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"malformed {name}: {raw!r}")


def _parse_bool(raw: str | None) -> bool:
    return (raw or "").strip().lower() in ("1", "true", "yes", "on")


def create_app(config: AppConfig | None = None, index: SearchIndex | None = None) -> FastAPI:
    config = config or AppConfig()
    gazetteer = load_gazetteer(config.gazetteer)
    translator = _build_translator(config)
    state = ApiState(
        config=config,
        index=index if index is not None else _load_index(config, gazetteer, translator),
        gazetteer=gazetteer,
        translator=translator,
        access_log=AccessLog(config.access_log, config.log_retention_hours),
    )

    app = FastAPI(title="untrue-search", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.api = state
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def access_logger(request: Request, call_next):
        response = await call_next(request)
        state.access_log.record(request.method, request.url.path, response.status_code)
        return response

    router = APIRouter(prefix=API_PREFIX)

    @router.get("/search")
    def search(request: Request) -> Response:
        if state.index is None:
            return JSONResponse({"error": "index unavailable"}, status_code=503)
        params = request.query_params
        q = (params.get("q") or "").strip()
        if not q:
            return JSONResponse({"error": "empty query"}, status_code=400)
        try:
            verdicts = _split_multi(params.getlist("verdict"))
            try:
                verdict_set = frozenset(Verdict(v.lower()) for v in verdicts) or None
            except ValueError:
                raise ValueError(f"malformed verdict filter: {verdicts}")
            page_number = _parse_int(params.get("page"), "page")
            page_size = _parse_int(params.get("page_size"), "page_size")
            query = Query(
                text=q,
                verdicts=verdict_set,
                languages=frozenset(_split_multi(params.getlist("lang"))) or None,
                sources=frozenset(_split_multi(params.getlist("source"))) or None,
                countries=frozenset(_split_multi(params.getlist("country"))) or None,
                year_from=_parse_int(params.get("year_from"), "year_from"),
                year_to=_parse_int(params.get("year_to"), "year_to"),
                display_language=params.get("display_lang") or None,
                page=page_number if page_number is not None else 0,
                page_size=page_size if page_size is not None else config.page_size_default,
                expand_entities=_parse_bool(params.get("expand")),
            )
            page = state.index.search(query)
        except ValueError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return JSONResponse(page.to_dict())

    @router.get("/claims/{record_id}")
    def claim(record_id: str) -> Response:
        if state.index is None:
            return JSONResponse({"error": "index unavailable"}, status_code=503)
        found = state.index.get(record_id)
        if found is None:
            return JSONResponse({"error": "unknown record_id"}, status_code=404)
        return JSONResponse(found.to_dict())

    @router.get("/stats")
    def stats() -> Response:
        if state.index is None:
            return JSONResponse({"error": "index unavailable"}, status_code=503)
        return JSONResponse(compute_stats(state.index).to_dict())

    @router.post("/pipeline/run")
    def trigger_pipeline() -> Response:
        if not config.pipeline_tasks:
            return JSONResponse({"error": "no pipeline configured"}, status_code=400)
        with state.run_lock:
            for run_id in state.run_order:
                run = state.runs[run_id]
                if not run.is_terminal():  # type: ignore[attr-defined]
                    return JSONResponse(
                        {"error": "a pipeline run is already active", "run_id": run_id},
                        status_code=409,
                    )
            run_id = f"run-{len(state.run_order) + 1:04d}"
            state.run_order.append(run_id)

        tasks = build_task_specs(config.pipeline_tasks)

        def _execute():
            run = execute_dag(
                tasks,
                run_id=run_id,
                max_workers=config.pipeline_workers,
                run_log_path=config.run_log,
                on_run_created=lambda created: state.runs.__setitem__(run_id, created),
            )
            state.runs[run_id] = run
            if config.index_snapshot and Path(config.index_snapshot).exists():
                try:
                    state.index = SearchIndex.load(
                        config.index_snapshot,
                        gazetteer=state.gazetteer,
                        translator=state.translator,
                    )
                except SnapshotError:
                    pass  # keep serving the previous in-memory index

        thread = threading.Thread(target=_execute, name=run_id, daemon=True)
        thread.start()
        return JSONResponse({"run_id": run_id}, status_code=202)

    @router.get("/pipeline/runs/{run_id}")
    def pipeline_run(run_id: str) -> Response:
        run = state.runs.get(run_id)
        if run is None:
            if run_id in state.run_order:
                # Accepted but the worker thread has not registered it yet.
                return JSONResponse({"run_id": run_id, "task_states": {}}, status_code=200)
            return JSONResponse({"error": "unknown run_id"}, status_code=404)
        return JSONResponse(run.to_dict())  # type: ignore[attr-defined]

    @router.get("/health")
    def health() -> Response:
        documents = len(state.index) if state.index is not None else 0
        return JSONResponse(
            {
                "status": "ok" if state.index is not None else "degraded",
                "documents": documents,
                "snapshot_saved_at": state.index.snapshot_saved_at if state.index else None,
            }
        )

    app.include_router(router)
    return app
