"""Parsers for bibliographic and authority source records."""

from .headings import display_form, normalize_heading
from .iso2709 import parse_iso2709
from .jsonl import (
    auth_to_obj,
    bib_to_obj,
    parse_auth_jsonl,
    parse_bib_jsonl,
    serialize_auth_jsonl,
    serialize_bib_jsonl,
)
from .records import AuthorityRecord, BibRecord, ParseReport

__all__ = [
    "AuthorityRecord",
    "BibRecord",
    "ParseReport",
    "auth_to_obj",
    "bib_to_obj",
    "display_form",
    "normalize_heading",
    "parse_auth_jsonl",
    "parse_bib_jsonl",
    "parse_iso2709",
    "serialize_auth_jsonl",
    "serialize_bib_jsonl",
]
