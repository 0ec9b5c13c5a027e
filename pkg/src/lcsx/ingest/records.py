"""Canonical in-memory record types and their parse-time cleanup rules."""

from __future__ import annotations

from dataclasses import dataclass, field

from .headings import normalize_heading


@dataclass
class ParseReport:
    """Counters for non-fatal cleanups applied while parsing a source."""

    records: int = 0
    duplicate_subjects_dropped: int = 0
    self_broader_dropped: int = 0
    duplicate_broader_dropped: int = 0
    ignored_fields: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "records": self.records,
            "duplicate_subjects_dropped": self.duplicate_subjects_dropped,
            "self_broader_dropped": self.self_broader_dropped,
            "duplicate_broader_dropped": self.duplicate_broader_dropped,
            "ignored_fields": self.ignored_fields,
        }


@dataclass
class BibRecord:
    """One catalog item: title plus optional display fields and subject strings."""

    id: str
    title: str
    statement: str | None = None
    year: int | None = None
    series: str | None = None
    subjects: list[str] = field(default_factory=list)


@dataclass
class AuthorityRecord:
    """An established heading and the broader headings that place it in the hierarchy."""

    id: str
    heading: str
    broader: list[str] = field(default_factory=list)


def clean_subjects(subjects: list[str], report: ParseReport) -> list[str]:
    """Drop subjects that repeat under normalization, keeping first spellings."""
    seen: set[str] = set()
    out: list[str] = []
    for subject in subjects:
        key = normalize_heading(subject)
        if key in seen:
            report.duplicate_subjects_dropped += 1
            continue
        seen.add(key)
        out.append(subject)
    return out


def clean_broader(heading: str, broader: list[str], report: ParseReport) -> list[str]:
    """Drop self-loops and duplicate broader entries (under normalization)."""
    own = normalize_heading(heading)
    seen: set[str] = set()
    out: list[str] = []
    for term in broader:
        key = normalize_heading(term)
        if key == own:
            report.self_broader_dropped += 1
            continue
        if key in seen:
            report.duplicate_broader_dropped += 1
            continue
        seen.add(key)
        out.append(term)
    return out
