"""JSONL readers and writers for bib and authority records.

JSONL is the canonical interchange format: one object per line, UTF-8.
Field names are part of the wire contract: ``id, title, statement, year,
series, subjects`` for bib records and ``id, heading, broader`` for authority
records. Unknown fields are ignored for forward compatibility.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

from ..errors import DuplicateIdError, EmptyHeadingError, ParseError, SchemaError
from .records import AuthorityRecord, BibRecord, ParseReport, clean_broader, clean_subjects

Stream = IO[bytes] | IO[str] | Iterable[bytes] | Iterable[str]


def _lines(stream: Stream) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if line:
            yield lineno, line


def _load_object(lineno: int, line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", line=lineno) from exc
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", line=lineno)
    return obj


def _required_str(obj: dict, name: str, lineno: int) -> str:
    value = obj.get(name)
    if value is None:
        raise SchemaError(f"missing required field {name!r}", line=lineno)
    if not isinstance(value, str):
        raise SchemaError(f"field {name!r} must be a string", line=lineno)
    return value


def _optional_str(obj: dict, name: str, lineno: int) -> str | None:
    value = obj.get(name)
    if value is None:
        return None
    if not isinstance(value, str):
        raise SchemaError(f"field {name!r} must be a string", line=lineno)
    return value


def parse_bib_jsonl(stream: Stream, report: ParseReport | None = None) -> list[BibRecord]:
    """Parse bib records, in input order.

    Raises ParseError / SchemaError with the offending line number, and
    DuplicateIdError when two lines share an id. Subjects repeating under
    normalization are dropped (counted on ``report``).
    """
    report = report if report is not None else ParseReport()
    records: list[BibRecord] = []
    seen_ids: set[str] = set()
    for lineno, line in _lines(stream):
        obj = _load_object(lineno, line)
        rec_id = _required_str(obj, "id", lineno)
        title = _required_str(obj, "title", lineno)
        if rec_id in seen_ids:
            raise DuplicateIdError(rec_id, line=lineno)
        seen_ids.add(rec_id)

        year = obj.get("year")
        if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
            raise SchemaError("field 'year' must be an integer", line=lineno)

        subjects = obj.get("subjects", [])
        if not isinstance(subjects, list) or any(not isinstance(s, str) for s in subjects):
            raise SchemaError("field 'subjects' must be a list of strings", line=lineno)
        try:
            subjects = clean_subjects(subjects, report)
        except EmptyHeadingError as exc:
            raise SchemaError(f"empty subject heading: {exc}", line=lineno) from exc

        records.append(
            BibRecord(
                id=rec_id,
                title=title,
                statement=_optional_str(obj, "statement", lineno),
                year=year,
                series=_optional_str(obj, "series", lineno),
                subjects=subjects,
            )
        )
        report.records += 1
    return records


def parse_auth_jsonl(stream: Stream, report: ParseReport | None = None) -> list[AuthorityRecord]:
    """Parse authority records, enforcing per-record broader-list invariants."""
    report = report if report is not None else ParseReport()
    records: list[AuthorityRecord] = []
    seen_ids: set[str] = set()
    for lineno, line in _lines(stream):
        obj = _load_object(lineno, line)
        rec_id = _required_str(obj, "id", lineno)
        heading = _required_str(obj, "heading", lineno)
        if rec_id in seen_ids:
            raise DuplicateIdError(rec_id, line=lineno)
        seen_ids.add(rec_id)

        broader = obj.get("broader", [])
        if not isinstance(broader, list) or any(not isinstance(b, str) for b in broader):
            raise SchemaError("field 'broader' must be a list of strings", line=lineno)
        try:
            broader = clean_broader(heading, broader, report)
        except EmptyHeadingError as exc:
            raise SchemaError(f"empty heading: {exc}", line=lineno) from exc

        records.append(AuthorityRecord(id=rec_id, heading=heading, broader=broader))
        report.records += 1
    return records


def bib_to_obj(record: BibRecord) -> dict:
    """Canonical JSON object for a bib record (absent optionals omitted)."""
    obj: dict = {"id": record.id, "title": record.title}
    if record.statement is not None:
        obj["statement"] = record.statement
    if record.year is not None:
        obj["year"] = record.year
    if record.series is not None:
        obj["series"] = record.series
    obj["subjects"] = list(record.subjects)
    return obj


def auth_to_obj(record: AuthorityRecord) -> dict:
    return {"id": record.id, "heading": record.heading, "broader": list(record.broader)}


def _dumps(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def serialize_bib_jsonl(records: Iterable[BibRecord]) -> str:
    """Canonical JSONL text such that parse(serialize(rs)) == rs."""
    return "".join(_dumps(bib_to_obj(r)) + "\n" for r in records)


def serialize_auth_jsonl(records: Iterable[AuthorityRecord]) -> str:
    return "".join(_dumps(auth_to_obj(r)) + "\n" for r in records)
