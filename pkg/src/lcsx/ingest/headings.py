"""Heading normalization.

Bibliographic subject strings are matched to authority headings by normalized
string, not by id, so both sides must agree on one canonical form.
"""

from __future__ import annotations

import re

from ..errors import EmptyHeadingError

_WS_RUN = re.compile(r"\s+")
_SUBDIV_SEP = re.compile(r" ?-{2,} ?")


def normalize_heading(raw: str) -> str:
    """Return the canonical matching key for a heading string.

    Trims, collapses whitespace runs to one space, case-folds, and rewrites any
    run of two or more hyphens (with optional surrounding spaces) to exactly
    ``--``. All other punctuation is preserved. Idempotent.

    Raises EmptyHeadingError when nothing is left after trimming.
    """
    key = _WS_RUN.sub(" ", raw.strip())
    key = _SUBDIV_SEP.sub("--", key)
    key = key.casefold()
    if not key:
        raise EmptyHeadingError(f"heading {raw!r} is empty after normalization")
    return key


def display_form(raw: str) -> str:
    """Whitespace-tidied display variant of a heading (case preserved)."""
    return _SUBDIV_SEP.sub("--", _WS_RUN.sub(" ", raw.strip()))
