from __future__ import annotations

import base64
import json

import pytest

from untrue.ingest.archive import ArchiveError, dump_archive, load_archive


def _line(url="https://www.snopes.com/a", body=b"<html></html>", status=200):
    return json.dumps(
        {
            "url": url,
            "fetched_at": "2025-01-15T12:00:00+00:00",
            "http_status": status,
            "content_type": "text/html",
            "body_base64": base64.b64encode(body).decode(),
        }
    )


def test_empty_archive(tmp_path):
    path = tmp_path / "empty.ndjson"
    path.write_text("", encoding="utf-8")
    result = load_archive(path)
    assert result.documents == []
    assert result.skipped == 0


def test_well_formed_records_in_order(tmp_path):
    path = tmp_path / "three.ndjson"
    lines = [_line(url=f"https://www.snopes.com/{i}") for i in range(3)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    result = load_archive(path)
    assert len(result.documents) == 3
    assert result.skipped == 0
    assert [d.url for d in result.documents] == [f"https://www.snopes.com/{i}" for i in range(3)]


def test_truncated_record_is_skipped_and_counted(tmp_path):
    path = tmp_path / "torn.ndjson"
    truncated = _line(url="https://www.snopes.com/torn")[:40]
    path.write_text("\n".join([_line(), truncated, _line(url="https://fullfact.org/b")]) + "\n")
    result = load_archive(path)
    assert len(result.documents) == 2
    assert result.skipped == 1


def test_invalid_base64_and_bad_invariants_skipped(tmp_path):
    path = tmp_path / "bad.ndjson"
    bad_b64 = _line().replace(base64.b64encode(b"<html></html>").decode(), "!!!notbase64!!!")
    future = _line().replace("2025-01-15", "2999-01-15")
    empty_200 = _line(body=b"", status=200)
    relative_url = _line(url="/no-scheme")
    path.write_text("\n".join([bad_b64, future, empty_200, relative_url, _line()]) + "\n")
    result = load_archive(path)
    assert len(result.documents) == 1
    assert result.skipped == 4


def test_missing_file_raises():
    with pytest.raises(FileNotFoundError):
        load_archive("/nonexistent/archive.ndjson")


def test_binary_file_raises_archive_error(tmp_path):
    path = tmp_path / "binary.ndjson"
    path.write_bytes(b"\x80\x81\x82\xff\xfe")
    with pytest.raises(ArchiveError):
        load_archive(path)


def test_dump_then_load_round_trip(tmp_path):
    path = tmp_path / "rt.ndjson"
    source = load_archive_fixture(tmp_path)
    dump_archive(source, path)
    result = load_archive(path)
    assert [d.url for d in result.documents] == [d.url for d in source]
    assert [d.body for d in result.documents] == [d.body for d in source]


def load_archive_fixture(tmp_path):
    path = tmp_path / "src.ndjson"
    path.write_text("\n".join([_line(), _line(url="https://fullfact.org/b")]) + "\n")
    return load_archive(path).documents
