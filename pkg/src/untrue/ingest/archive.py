"""Fixture archives: newline-delimited JSON records of fetched pages.

The archive is the offline stand-in for live crawling; every record carries
url, fetched_at, http_status, content_type and a base64 body.
"""

from __future__ import annotations

import base64
import binascii
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from untrue.records import RawDocument


class ArchiveError(Exception):
    """Archive cannot be read at all (missing file, non-text content)."""


@dataclass
class ArchiveResult:
    documents: list[RawDocument]
    skipped: int


def load_archive(path: str | Path, now: datetime | None = None) -> ArchiveResult:
    """Read an archive file; malformed records are skipped and counted.

    Records come back in file order. A record is malformed when its JSON,
    base64 body, or RawDocument invariants are broken.
    """
    archive_path = Path(path)
    if not archive_path.is_file():
        raise FileNotFoundError(f"archive not found: {archive_path}")
    try:
        text = archive_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ArchiveError(f"archive is not UTF-8 text: {archive_path}") from exc

    reference = now or datetime.now(timezone.utc)
    documents: list[RawDocument] = []
    skipped = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        doc = _parse_record(line, reference)
        if doc is None:
            skipped += 1
        else:
            documents.append(doc)
    return ArchiveResult(documents=documents, skipped=skipped)


def dump_archive(documents: list[RawDocument], path: str | Path) -> None:
    """Write documents in the archive format (one JSON record per line)."""
    lines = []
    for doc in documents:
        lines.append(
            json.dumps(
                {
                    "url": doc.url,
                    "fetched_at": doc.fetched_at.isoformat(),
                    "http_status": doc.http_status,
                    "content_type": doc.content_type,
                    "body_base64": base64.b64encode(doc.body).decode("ascii"),
                },
                ensure_ascii=False,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def _parse_record(line: str, reference: datetime) -> RawDocument | None:
    try:
        data = json.loads(line)
    except json.JSONDecodeError:
        return None
    if not isinstance(data, dict):
        return None
    try:
        fetched_at = datetime.fromisoformat(str(data["fetched_at"]).replace("Z", "+00:00"))
        body = base64.b64decode(str(data["body_base64"]), validate=True)
        doc = RawDocument(
            url=str(data["url"]),
            fetched_at=fetched_at,
            http_status=int(data["http_status"]),
            content_type=str(data.get("content_type", "")),
            body=body,
        )
    except (KeyError, ValueError, TypeError, binascii.Error):
        return None
    if doc.problems(now=reference):
        return None
    return doc
