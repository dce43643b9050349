"""Per-source extraction templates and the white-list registry built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlparse


class TemplateError(Exception):
    """Registry misconfiguration (bad file, duplicate ids, missing rules)."""


class NoMatchingTemplate(LookupError):
    """No registered source covers the URL's hostname."""


class AmbiguousTemplate(LookupError):
    """More than one template matches one hostname."""


@dataclass(frozen=True)
class ExtractionRule:
    """Maps a markup location to a claim-record field (fallback extraction)."""

    field: str
    selector: str
    attribute: str | None = None


# Fields a template must know how to locate even when markup is absent.
_REQUIRED_RULE_FIELDS = frozenset({"claim_text", "review_url"})

_RECORD_FIELDS = frozenset(
    {
        "claim_text",
        "review_url",
        "review_title",
        "claimant",
        "date_published",
        "rating_value",
        "best_rating",
        "worst_rating",
        "rating_label",
    }
)


@dataclass(frozen=True)
class SourceTemplate:
    source_id: str
    domain_patterns: tuple[str, ...]
    country: str
    default_language: str
    extraction_rules: tuple[ExtractionRule, ...]

    def matches_host(self, hostname: str) -> bool:
        host = hostname.lower().rstrip(".")
        for pattern in self.domain_patterns:
            pat = pattern.lower()
            if host == pat or host.endswith("." + pat):
                return True
        return False

    def problems(self) -> list[str]:
        issues = []
        if not self.source_id:
            issues.append("empty source_id")
        if not self.domain_patterns:
            issues.append("no domain_patterns")
        rule_fields = {rule.field for rule in self.extraction_rules}
        missing = _REQUIRED_RULE_FIELDS - rule_fields
        if missing:
            issues.append(f"missing required rules: {sorted(missing)}")
        unknown = rule_fields - _RECORD_FIELDS
        if unknown:
            issues.append(f"rules target unknown fields: {sorted(unknown)}")
        return issues


class TemplateRegistry:
    """Immutable set of source templates; doubles as the fetch white-list."""

    def __init__(self, templates: list[SourceTemplate]):
        seen: dict[str, SourceTemplate] = {}
        for template in templates:
            issues = template.problems()
            if issues:
                raise TemplateError(f"{template.source_id or '<unnamed>'}: {'; '.join(issues)}")
            if template.source_id in seen:
                raise TemplateError(f"duplicate source_id {template.source_id!r}")
            seen[template.source_id] = template
        self._templates = dict(sorted(seen.items()))

    @classmethod
    def load_dir(cls, path: str | Path) -> "TemplateRegistry":
        """Load one JSON template per file; filename (sans .json) is the source_id."""
        directory = Path(path)
        if not directory.is_dir():
            raise TemplateError(f"template directory not found: {directory}")
        templates = []
        for file in sorted(directory.glob("*.json")):
            try:
                data = json.loads(file.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise TemplateError(f"unreadable template {file.name}: {exc}") from exc
            templates.append(_template_from_dict(data, fallback_id=file.stem))
        if not templates:
            raise TemplateError(f"no templates in {directory}")
        return cls(templates)

    def __len__(self) -> int:
        return len(self._templates)

    def __iter__(self):
        return iter(self._templates.values())

    def get(self, source_id: str) -> SourceTemplate | None:
        return self._templates.get(source_id)

    def default_languages(self) -> dict[str, str]:
        return {t.source_id: t.default_language for t in self}

    def match(self, url: str) -> SourceTemplate:
        return match_template(url, list(self))


def match_template(url: str, registry: list[SourceTemplate]) -> SourceTemplate:
    """The unique template whose domain patterns cover the URL's hostname.

    Hostname comparison is case-insensitive; a pattern matches itself and any
    subdomain. Zero matches and multiple matches are both errors.
    """
    if not registry:
        raise NoMatchingTemplate("empty template registry")
    hostname = (urlparse(url).hostname or "").lower()
    if not hostname:
        raise NoMatchingTemplate(f"URL has no hostname: {url!r}")
    hits = [t for t in registry if t.matches_host(hostname)]
    if not hits:
        raise NoMatchingTemplate(f"no template for host {hostname!r}")
    if len(hits) > 1:
        ids = sorted(t.source_id for t in hits)
        raise AmbiguousTemplate(f"host {hostname!r} matches templates {ids}")
    return hits[0]


def _template_from_dict(data: dict, fallback_id: str) -> SourceTemplate:
    rules = tuple(
        ExtractionRule(
            field=rule["field"],
            selector=rule["selector"],
            attribute=rule.get("attribute"),
        )
        for rule in data.get("extraction_rules", [])
    )
    return SourceTemplate(
        source_id=data.get("source_id", fallback_id),
        domain_patterns=tuple(data.get("domain_patterns", [])),
        country=data.get("country", ""),
        default_language=data.get("default_language", "und"),
        extraction_rules=rules,
    )
