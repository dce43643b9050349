"""Application configuration for the API service and the pipeline runner."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

CONFIG_ENV_VAR = "UNTRUE_CONFIG"

DEFAULT_LOG_RETENTION_HOURS = 24.0


class ConfigError(Exception):
    pass


@dataclass
class PipelineTaskConfig:
    task_id: str
    action: str
    deps: list[str] = field(default_factory=list)
    max_retries: int = 0
    retry_delay: float = 0.0
    params: dict = field(default_factory=dict)


@dataclass
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    page_size_default: int = 10
    log_retention_hours: float = DEFAULT_LOG_RETENTION_HOURS
    translation_provider: str = "default"  # "default" | "dictionary"
    dictionary_path: str | None = None
    index_snapshot: str | None = None
    access_log: str | None = None
    run_log: str | None = None
    cors_origins: list[str] = field(default_factory=list)
    templates_dir: str | None = None
    gazetteer: str | None = None
    lexicon: str | None = None
    pipeline_tasks: list[PipelineTaskConfig] = field(default_factory=list)
    pipeline_workers: int = 1

    def validate(self) -> None:
        if not (0 < self.port < 65536):
            raise ConfigError(f"invalid port {self.port}")
        if self.log_retention_hours <= 0:
            raise ConfigError("log retention must be a finite positive duration")
        if self.translation_provider not in ("default", "dictionary"):
            raise ConfigError(f"unknown translation provider {self.translation_provider!r}")
        if self.translation_provider == "dictionary" and not self.dictionary_path:
            raise ConfigError("dictionary provider requires dictionary_path")


def load_config(path: str | Path | None = None) -> AppConfig:
    """Read a YAML or JSON config file; path falls back to $UNTRUE_CONFIG."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        config = AppConfig()
        config.validate()
        return config

    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError(f"config file not found: {config_path}")
    text = config_path.read_text(encoding="utf-8")
    if config_path.suffix.lower() == ".json":
        data = json.loads(text)
    else:
        data = yaml.safe_load(text) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping: {config_path}")

    pipeline = data.get("pipeline", {}) or {}
    tasks = [
        PipelineTaskConfig(
            task_id=entry["task_id"],
            action=entry["action"],
            deps=list(entry.get("deps", [])),
            max_retries=int(entry.get("max_retries", 0)),
            retry_delay=float(entry.get("retry_delay", 0.0)),
            params=dict(entry.get("params", {})),
        )
        for entry in pipeline.get("tasks", [])
    ]

    config = AppConfig(
        host=data.get("host", "127.0.0.1"),
        port=int(data.get("port", 8000)),
        page_size_default=int(data.get("page_size_default", 10)),
        log_retention_hours=float(data.get("log_retention_hours", DEFAULT_LOG_RETENTION_HOURS)),
        translation_provider=data.get("translation_provider", "default"),
        dictionary_path=data.get("dictionary_path"),
        index_snapshot=data.get("index_snapshot"),
        access_log=data.get("access_log"),
        run_log=data.get("run_log"),
        cors_origins=list(data.get("cors_origins", [])),
        templates_dir=data.get("templates_dir"),
        gazetteer=data.get("gazetteer"),
        lexicon=data.get("lexicon"),
        pipeline_tasks=tasks,
        pipeline_workers=int(pipeline.get("workers", 1)),
    )
    config.validate()
    return config
