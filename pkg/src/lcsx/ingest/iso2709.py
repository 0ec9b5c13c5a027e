"""ISO 2709 (MARC21 binary) importer for bib and authority records.

Only the fields the engine consumes are mapped:

bib        001 id; 245 $a+$b title; 260/264 $c year (first 4-digit run);
           490 $a series; one subject per 650 ($a then x/v/y/z in field
           order, joined with ``--``).
authority  001 id; 150 heading ($a then x/v/y/z); one broader entry per
           550 whose $w contains ``g``.

Other subject/heading fields (600, 610, 651, non-topical 1xx, ...) are
ignored and counted on the parse report. Records must be UTF-8 (leader
byte 9 = ``a``); MARC-8 is rejected.
"""

from __future__ import annotations

import re
from typing import Literal

from ..errors import (
    EmptyHeadingError,
    MalformedRecordError,
    SchemaError,
    UnsupportedEncodingError,
)
from .records import AuthorityRecord, BibRecord, ParseReport, clean_broader, clean_subjects

FIELD_TERMINATOR = 0x1E
SUBFIELD_DELIMITER = 0x1F
RECORD_TERMINATOR = 0x1D

LEADER_LEN = 24
DIR_ENTRY_LEN = 12

_YEAR = re.compile(r"\d{4}")
_INTER_RECORD_FILLER = b"\n\r\x00 "


class _Field:
    __slots__ = ("tag", "value", "subfields")

    def __init__(self, tag: str, value: str, subfields: list[tuple[str, str]]):
        self.tag = tag
        self.value = value  # control fields only
        self.subfields = subfields

    def first(self, code: str) -> str | None:
        for c, v in self.subfields:
            if c == code:
                return v
        return None

    def all(self, codes: str) -> list[str]:
        return [v for c, v in self.subfields if c in codes]


def _digits(raw: bytes, offset: int, what: str) -> int:
    text = raw.decode("ascii", "replace")
    if not text.isdigit():
        raise MalformedRecordError(f"{what} is not numeric: {text!r}", offset)
    return int(text)


def _parse_record(data: bytes, start: int) -> list[_Field]:
    """Split one framed record into fields; raises on any framing violation."""
    if len(data) - start < LEADER_LEN:
        raise MalformedRecordError("truncated leader", start)
    leader = data[start : start + LEADER_LEN]
    rec_len = _digits(leader[0:5], start, "leader record length")
    if rec_len < LEADER_LEN + 1 or start + rec_len > len(data):
        raise MalformedRecordError(
            f"leader declares {rec_len} bytes but only {len(data) - start} remain", start
        )
    coding = chr(leader[9])
    if coding != "a":
        raise UnsupportedEncodingError(start, coding)
    base = _digits(leader[12:17], start, "leader base address")
    end = start + rec_len
    if data[end - 1] != RECORD_TERMINATOR:
        raise MalformedRecordError("missing record terminator", end - 1)
    if base <= LEADER_LEN or start + base > end:
        raise MalformedRecordError(f"base address {base} out of bounds", start)
    dir_start = start + LEADER_LEN
    dir_end = start + base - 1
    if data[dir_end] != FIELD_TERMINATOR:
        raise MalformedRecordError("directory not terminated", dir_end)
    dir_bytes = data[dir_start:dir_end]
    if len(dir_bytes) % DIR_ENTRY_LEN:
        raise MalformedRecordError("directory length not a multiple of 12", dir_start)

    fields: list[_Field] = []
    for i in range(0, len(dir_bytes), DIR_ENTRY_LEN):
        entry = dir_bytes[i : i + DIR_ENTRY_LEN]
        tag = entry[0:3].decode("ascii", "replace")
        length = _digits(entry[3:7], dir_start + i + 3, "directory field length")
        field_off = _digits(entry[7:12], dir_start + i + 7, "directory field offset")
        abs_start = start + base + field_off
        abs_end = abs_start + length
        if abs_end > end:
            raise MalformedRecordError(f"field {tag} extends past record end", abs_start)
        if data[abs_end - 1] != FIELD_TERMINATOR:
            raise MalformedRecordError(f"field {tag} not terminated", abs_start)
        body = data[abs_start : abs_end - 1]
        if tag.isdigit() and int(tag) < 10:
            fields.append(_Field(tag, body.decode("utf-8"), []))
            continue
        # data field: 2 indicator bytes then delimited subfields
        subfields: list[tuple[str, str]] = []
        for chunk in body[2:].split(bytes([SUBFIELD_DELIMITER])):
            if not chunk:
                continue
            text = chunk.decode("utf-8")
            subfields.append((text[0], text[1:]))
        fields.append(_Field(tag, "", subfields))
    return fields


def _subdivided(field: _Field) -> str:
    """$a then each x/v/y/z in field order, joined with the subdivision separator."""
    head = field.first("a") or ""
    parts = [head.strip()] if head.strip() else []
    for code, value in field.subfields:
        if code in "xvyz" and value.strip():
            parts.append(value.strip())
    return "--".join(parts)


def _bib_from_fields(fields: list[_Field], ordinal: int, report: ParseReport) -> BibRecord:
    by_tag: dict[str, list[_Field]] = {}
    for f in fields:
        by_tag.setdefault(f.tag, []).append(f)

    if "001" not in by_tag:
        raise SchemaError("missing control field 001", ordinal=ordinal)
    if "245" not in by_tag:
        raise SchemaError("missing title field 245", ordinal=ordinal)
    rec_id = by_tag["001"][0].value.strip()
    title_field = by_tag["245"][0]
    title_parts = [p.strip() for p in (title_field.first("a"), title_field.first("b")) if p and p.strip()]
    if not title_parts:
        raise SchemaError("title field 245 has no $a/$b", ordinal=ordinal)
    title = " ".join(title_parts)

    year: int | None = None
    for f in fields:
        if f.tag in ("260", "264"):
            for value in f.all("c"):
                m = _YEAR.search(value)
                if m:
                    year = int(m.group())
                    break
        if year is not None:
            break

    series = None
    if "490" in by_tag:
        raw = by_tag["490"][0].first("a")
        if raw and raw.strip():
            series = raw.strip()

    subjects: list[str] = []
    for f in fields:
        if f.tag == "650":
            heading = _subdivided(f)
            if heading:
                subjects.append(heading)
            else:
                report.ignored_fields += 1
        elif f.tag.startswith("6"):
            report.ignored_fields += 1
    try:
        subjects = clean_subjects(subjects, report)
    except EmptyHeadingError as exc:  # pragma: no cover - guarded above
        raise SchemaError(f"empty subject: {exc}", ordinal=ordinal) from exc

    return BibRecord(
        id=rec_id,
        title=title,
        statement=None,
        year=year,
        series=series,
        subjects=subjects,
    )


def _auth_from_fields(fields: list[_Field], ordinal: int, report: ParseReport) -> AuthorityRecord | None:
    """Returns None for ignorable non-topical authorities (1xx present, no 150)."""
    by_tag: dict[str, list[_Field]] = {}
    for f in fields:
        by_tag.setdefault(f.tag, []).append(f)

    if "001" not in by_tag:
        raise SchemaError("missing control field 001", ordinal=ordinal)
    if "150" not in by_tag:
        if any(t.startswith("1") for t in by_tag):
            report.ignored_fields += 1
            return None
        raise SchemaError("missing heading field 150", ordinal=ordinal)
    rec_id = by_tag["001"][0].value.strip()
    heading = _subdivided(by_tag["150"][0])
    if not heading:
        raise SchemaError("heading field 150 has no $a", ordinal=ordinal)

    broader: list[str] = []
    for f in fields:
        if f.tag != "550":
            continue
        w = f.first("w") or ""
        if "g" not in w:
            continue
        term = _subdivided(f)
        if term:
            broader.append(term)
    try:
        broader = clean_broader(heading, broader, report)
    except EmptyHeadingError as exc:  # pragma: no cover - guarded above
        raise SchemaError(f"empty broader term: {exc}", ordinal=ordinal) from exc

    return AuthorityRecord(id=rec_id, heading=heading, broader=broader)


def parse_iso2709(
    data: bytes,
    kind: Literal["bib", "authority"],
    report: ParseReport | None = None,
) -> list[BibRecord] | list[AuthorityRecord]:
    """Parse zero or more concatenated ISO 2709 records of one kind."""
    if kind not in ("bib", "authority"):
        raise ValueError(f"kind must be 'bib' or 'authority', got {kind!r}")
    report = report if report is not None else ParseReport()
    out: list = []
    offset = 0
    ordinal = 0
    while offset < len(data):
        if data[offset] in _INTER_RECORD_FILLER:
            offset += 1
            continue
        ordinal += 1
        fields = _parse_record(data, offset)
        rec_len = int(data[offset : offset + 5])
        if kind == "bib":
            out.append(_bib_from_fields(fields, ordinal, report))
            report.records += 1
        else:
            record = _auth_from_fields(fields, ordinal, report)
            if record is not None:
                out.append(record)
                report.records += 1
        offset += rec_len
    return out
