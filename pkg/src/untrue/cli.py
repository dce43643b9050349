"""Command-line entry points: run every stage, the pipeline, search and stats.

Exit codes: 0 success, 1 usage error, 2 operational failure. Every
subcommand takes --format json for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from untrue.config import CONFIG_ENV_VAR, ConfigError, load_config
from untrue.enrich.translate import DictionaryProvider, IdentityProvider, Translator
from untrue.index.search import Query, SearchIndex, SnapshotError
from untrue.stages import (
    build_task_specs,
    load_gazetteer,
    run_enrich,
    run_index,
    run_ingest,
    run_normalize,
)
from untrue.stats import compute_stats
from untrue.verdicts import Verdict
from untrue.workflow import execute_dag

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _emit(payload: dict, as_json: bool, human: str | None = None) -> None:
    if as_json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(human if human is not None else json.dumps(payload, ensure_ascii=False, sort_keys=True))


def build_parser() -> _Parser:
    parser = _Parser(prog="untrue", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def add_format(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p_ingest = sub.add_parser("ingest", help="extract claim records from an archive")
    p_ingest.add_argument("--archive", required=True)
    p_ingest.add_argument("--templates", default=None)
    p_ingest.add_argument("--out", required=True)
    add_format(p_ingest)

    p_norm = sub.add_parser("normalize", help="attach normalized verdicts")
    p_norm.add_argument("--in", dest="infile", required=True)
    p_norm.add_argument("--out", required=True)
    p_norm.add_argument("--lexicon", default=None)
    add_format(p_norm)

    p_enrich = sub.add_parser("enrich", help="attach language, entities, year")
    p_enrich.add_argument("--in", dest="infile", required=True)
    p_enrich.add_argument("--out", required=True)
    p_enrich.add_argument("--gazetteer", default=None)
    p_enrich.add_argument("--templates", default=None)
    add_format(p_enrich)

    p_index = sub.add_parser("index", help="build an index snapshot")
    p_index.add_argument("--in", dest="infile", required=True)
    p_index.add_argument("--out", required=True)
    p_index.add_argument("--gazetteer", default=None)
    add_format(p_index)

    p_pipe = sub.add_parser("pipeline", help="run the configured pipeline DAG")
    pipe_sub = p_pipe.add_subparsers(dest="pipeline_command", metavar="COMMAND")
    p_pipe_run = pipe_sub.add_parser("run")
    p_pipe_run.add_argument("--config", default=None, help=f"or ${CONFIG_ENV_VAR}")
    add_format(p_pipe_run)

    p_serve = sub.add_parser("serve", help="serve the HTTP API")
    p_serve.add_argument("--config", default=None, help=f"or ${CONFIG_ENV_VAR}")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    add_format(p_serve)

    p_stats = sub.add_parser("stats", help="print corpus statistics")
    p_stats.add_argument("--index", required=True)
    add_format(p_stats)

    p_search = sub.add_parser("search", help="query an index snapshot")
    p_search.add_argument("--index", required=True)
    p_search.add_argument("--q", required=True)
    p_search.add_argument("--verdict", action="append", default=None)
    p_search.add_argument("--lang", action="append", default=None)
    p_search.add_argument("--source", action="append", default=None)
    p_search.add_argument("--country", action="append", default=None)
    p_search.add_argument("--year-from", type=int, default=None)
    p_search.add_argument("--year-to", type=int, default=None)
    p_search.add_argument("--display-lang", default=None)
    p_search.add_argument("--expand", action="store_true")
    p_search.add_argument("--page", type=int, default=0)
    p_search.add_argument("--page-size", type=int, default=10)
    p_search.add_argument("--gazetteer", default=None)
    p_search.add_argument("--dictionary", default=None, help="phrase-table translation provider")
    add_format(p_search)

    return parser


def _load_index(args) -> SearchIndex:
    translator = Translator(
        DictionaryProvider.load(args.dictionary)
        if getattr(args, "dictionary", None)
        else IdentityProvider()
    )
    return SearchIndex.load(
        args.index,
        gazetteer=load_gazetteer(getattr(args, "gazetteer", None)),
        translator=translator,
    )


def _format_hit_row(hit: dict) -> str:
    date = hit["date_published"] or "----------"
    return (
        f"[{hit['verdict'].upper():6}] {date}  {hit['country'] or '--'}  "
        f"{hit['review_title']}\n"
        f"         {hit['review_url']}\n"
        f"         {hit['excerpt']}"
    )


def _cmd_search(args) -> int:
    index = _load_index(args)
    query = Query(
        text=args.q,
        verdicts=frozenset(Verdict(v.lower()) for v in args.verdict) if args.verdict else None,
        languages=frozenset(args.lang) if args.lang else None,
        sources=frozenset(args.source) if args.source else None,
        countries=frozenset(args.country) if args.country else None,
        year_from=args.year_from,
        year_to=args.year_to,
        display_language=args.display_lang,
        page=args.page,
        page_size=args.page_size,
        expand_entities=args.expand,
    )
    page = index.search(query)
    if args.format == "json":
        print(json.dumps(page.to_dict(), ensure_ascii=False, sort_keys=True))
        return EXIT_OK
    print(f"{page.total_hits} results ({page.elapsed_ms:.1f} ms)")
    for hit in page.hits:
        print(_format_hit_row(hit))
        translated = hit.get("translated")
        if translated:
            print(f"         [{translated['language']}] {translated['review_title']}")
    if page.expansion and (page.expansion.entity_ids or page.expansion.added_terms):
        print(f"expanded entities: {', '.join(page.expansion.entity_ids)}")
    return EXIT_OK


def _cmd_pipeline_run(args) -> int:
    config = load_config(args.config)
    if not config.pipeline_tasks:
        raise ConfigError("config defines no pipeline tasks")
    tasks = build_task_specs(config.pipeline_tasks)
    run = execute_dag(
        tasks,
        run_id="cli",
        max_workers=config.pipeline_workers,
        run_log_path=config.run_log,
    )
    doc = run.to_dict()
    failed = [t for t, s in doc["task_states"].items() if s != "success"]
    if args.format == "json":
        print(json.dumps(doc, ensure_ascii=False, sort_keys=True))
    else:
        for task_id, state in doc["task_states"].items():
            print(f"{task_id}: {state} (attempts {doc['attempt_counts'][task_id]})")
    return EXIT_FAILURE if failed else EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from untrue.api import create_app

    config = load_config(args.config)
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    app = create_app(config)
    _emit(
        {"host": config.host, "port": config.port},
        args.format == "json",
        human=f"serving on http://{config.host}:{config.port}",
    )
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    if not args.subcommand:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.subcommand == "pipeline" and not getattr(args, "pipeline_command", None):
        print("error: pipeline requires a command (run)", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.subcommand == "ingest":
            report = run_ingest(args.archive, args.out, args.templates)
            _emit(
                report,
                args.format == "json",
                human=f"{report['records']} records "
                f"({report['skipped_archive_records']} archive records skipped, "
                f"{report['dropped_records']} invalid dropped, "
                f"{report['duplicate_records']} duplicates)",
            )
        elif args.subcommand == "normalize":
            report = run_normalize(args.infile, args.out, args.lexicon)
            _emit(report, args.format == "json", human=f"{report['records']} records normalized")
        elif args.subcommand == "enrich":
            report = run_enrich(args.infile, args.out, args.gazetteer, args.templates)
            _emit(report, args.format == "json", human=f"{report['records']} records enriched")
        elif args.subcommand == "index":
            report = run_index(args.infile, args.out, args.gazetteer)
            _emit(
                report,
                args.format == "json",
                human=f"{report['documents']} documents indexed -> {report['snapshot']}",
            )
        elif args.subcommand == "pipeline":
            return _cmd_pipeline_run(args)
        elif args.subcommand == "serve":
            return _cmd_serve(args)
        elif args.subcommand == "stats":
            index = SearchIndex.load(args.index)
            report = compute_stats(index).to_dict()
            lang = ", ".join(f"{k}={v}" for k, v in report["by_language"].items())
            _emit(
                report,
                args.format == "json",
                human=f"{report['total_documents']} documents ({lang})",
            )
        elif args.subcommand == "search":
            return _cmd_search(args)
        else:  # pragma: no cover - argparse restricts choices
            return EXIT_USAGE
    except (
        OSError,
        ValueError,
        ConfigError,
        SnapshotError,
        KeyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
