"""Exception types shared across the engine.

Every error raised by lcsx code derives from LcsxError so callers (CLI,
HTTP service) can map failures to exit codes / API error codes in one place.
"""

from __future__ import annotations


class LcsxError(Exception):
    """Base class for all lcsx errors."""


class EmptyHeadingError(LcsxError):
    """A heading normalized to the empty string."""


class ParseError(LcsxError):
    """Malformed input line or byte sequence."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SchemaError(LcsxError):
    """Structurally valid input missing required fields or carrying bad values."""

    def __init__(self, message: str, line: int | None = None, ordinal: int | None = None):
        self.line = line
        self.ordinal = ordinal
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif ordinal is not None:
            where = f"record {ordinal}: "
        super().__init__(where + message)


class DuplicateIdError(LcsxError):
    """Two records in one collection share an id."""

    def __init__(self, record_id: str, line: int | None = None):
        self.record_id = record_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate record id {record_id!r}{where}")


class MalformedRecordError(LcsxError):
    """ISO 2709 framing violation (truncation, bad directory, missing terminator)."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"byte {offset}: {message}")


class UnsupportedEncodingError(LcsxError):
    """ISO 2709 record not flagged as UTF-8 (leader byte 9 != 'a')."""

    def __init__(self, offset: int, flag: str):
        self.offset = offset
        self.flag = flag
        super().__init__(f"byte {offset}: unsupported character coding scheme {flag!r} (only UTF-8 'a')")


class NotFoundError(LcsxError):
    """Unknown topic or record id."""


class InvalidPathError(LcsxError):
    """A tree path with an unknown id or a broken parent->child step."""

    def __init__(self, message: str, step: int):
        self.step = step
        super().__init__(f"step {step}: {message}")


class EmptyQueryError(LcsxError):
    """A search with neither query terms nor a topic filter."""


class BundleError(LcsxError):
    """Index bundle cannot be loaded (bad magic, version, or payload)."""
