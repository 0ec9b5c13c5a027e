"""Inverted index and BM25-ranked conjunctive keyword search.

Four fields are indexed per record: title, statement, series, and the display
headings of its assigned topics ("subjects"). Query semantics are conjunctive:
a candidate must contain every query term in at least one field. Scores are

    sum over terms, fields of
        weight(field) * idf(term) * tf*(k1+1) / (tf + k1*(1 - b + b*len/avglen))

with idf(term) = ln(1 + (N - df + 0.5) / (df + 0.5)), df counted per record
(any field), and field lengths averaged over all records. No stemming, no
stopwords: tokenization is case-folding plus splitting on non-alphanumerics.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .errors import EmptyQueryError
from .hierarchy import TopicGraph, records_at
from .ingest.records import BibRecord

FIELDS = ("title", "statement", "series", "subjects")
DEFAULT_FIELD_WEIGHTS = {"title": 2.0, "subjects": 1.5, "series": 1.0, "statement": 1.0}
DEFAULT_K1 = 1.2
DEFAULT_B = 0.75

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Case-fold and split on every non-alphanumeric character."""
    return _TOKEN.findall(text.casefold())


@dataclass
class Index:
    # term -> record id -> field -> term frequency
    postings: dict[str, dict[str, dict[str, int]]] = field(default_factory=dict)
    # record id -> field -> token count
    field_lengths: dict[str, dict[str, int]] = field(default_factory=dict)
    avg_field_lengths: dict[str, float] = field(default_factory=dict)
    field_weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_FIELD_WEIGHTS))
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    n_records: int = 0
    # record id -> (title, year, series), for result display
    display: dict[str, tuple[str, int | None, str | None]] = field(default_factory=dict)

    def df(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def idf(self, term: str) -> float:
        df = self.df(term)
        return math.log(1.0 + (self.n_records - df + 0.5) / (df + 0.5))


@dataclass
class Query:
    terms: list[str]
    topic_filter: int | None = None
    descendants: bool = False
    limit: int = 10
    offset: int = 0

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        if self.offset < 0:
            raise ValueError(f"offset must be >= 0, got {self.offset}")


@dataclass
class RankedResult:
    id: str
    score: float
    title: str
    year: int | None
    series: str | None
    assigned_topics: list[tuple[int, str]]


def record_field_texts(record: BibRecord, graph: TopicGraph) -> dict[str, str]:
    """The indexable text of each field; subjects come from assigned topic headings."""
    headings = " ".join(
        graph.headings[t] for t in graph.record_topics.get(record.id, [])
    )
    return {
        "title": record.title,
        "statement": record.statement or "",
        "series": record.series or "",
        "subjects": headings,
    }


def build_index(bibs: list[BibRecord], graph: TopicGraph) -> Index:
    index = Index(n_records=len(bibs))
    totals = {f: 0 for f in FIELDS}
    for record in bibs:
        lengths: dict[str, int] = {}
        for fname, text in record_field_texts(record, graph).items():
            tokens = tokenize(text)
            lengths[fname] = len(tokens)
            totals[fname] += len(tokens)
            for token in tokens:
                per_record = index.postings.setdefault(token, {})
                per_field = per_record.setdefault(record.id, {})
                per_field[fname] = per_field.get(fname, 0) + 1
        index.field_lengths[record.id] = lengths
        index.display[record.id] = (record.title, record.year, record.series)
    n = len(bibs)
    index.avg_field_lengths = {f: (totals[f] / n if n else 0.0) for f in FIELDS}
    return index


def score_record(index: Index, record_id: str, terms: list[str]) -> float:
    score = 0.0
    lengths = index.field_lengths[record_id]
    for term in terms:
        fields = index.postings.get(term, {}).get(record_id)
        if not fields:
            continue
        idf = index.idf(term)
        for fname, tf in fields.items():
            avg = index.avg_field_lengths[fname]
            norm = index.k1 * (1.0 - index.b + index.b * lengths[fname] / avg)
            score += index.field_weights[fname] * idf * tf * (index.k1 + 1.0) / (tf + norm)
    return score


def _result(index: Index, graph: TopicGraph, record_id: str, score: float) -> RankedResult:
    title, year, series = index.display[record_id]
    topics = [(t, graph.headings[t]) for t in graph.record_topics.get(record_id, [])]
    return RankedResult(
        id=record_id, score=score, title=title, year=year, series=series,
        assigned_topics=topics,
    )


def rank(
    index: Index,
    graph: TopicGraph,
    terms: list[str],
    topic_filter: int | None = None,
    descendants: bool = False,
) -> list[RankedResult]:
    """Full ranking (unpaged). Topic-only requests come back unscored, by record id."""
    if not terms:
        if topic_filter is None:
            raise EmptyQueryError("query has no terms and no topic filter")
        return [_result(index, graph, r, 0.0) for r in records_at(graph, topic_filter, descendants)]

    candidates: set[str] | None = None
    for term in terms:
        present = set(index.postings.get(term, ()))
        candidates = present if candidates is None else candidates & present
        if not candidates:
            return []
    if topic_filter is not None:
        candidates &= set(records_at(graph, topic_filter, descendants))

    scored = [(record_id, score_record(index, record_id, terms)) for record_id in candidates]
    scored.sort(key=lambda rs: (-rs[1], rs[0]))
    return [_result(index, graph, record_id, score) for record_id, score in scored]


def search(index: Index, graph: TopicGraph, query: Query) -> tuple[int, list[RankedResult]]:
    """Total candidate count plus the requested page of results."""
    ranking = rank(index, graph, query.terms, query.topic_filter, query.descendants)
    return len(ranking), ranking[query.offset : query.offset + query.limit]
