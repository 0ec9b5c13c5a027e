"""Self-contained index bundle: graph + inverted index + record store.

Layout: the ASCII magic line ``LCSX1`` followed by one canonical JSON
document (sorted keys, compact separators, ASCII-escaped). Serialization is
canonical so load -> save is byte-identical.

``content_digest`` covers payload and build configuration but deliberately
excludes provenance metadata (timestamps, source file digests): two builds
from equivalent inputs hash identically even when the files differ in
formatting or the clock moved.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BundleError
from .hierarchy import PruneParams, TopicGraph
from .ingest.jsonl import auth_to_obj, bib_to_obj
from .ingest.records import AuthorityRecord, BibRecord
from .search import Index

MAGIC = b"LCSX1"
FORMAT_VERSION = 1


def _canonical(obj: dict) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode("ascii")


def _graph_to_obj(graph: TopicGraph) -> dict:
    return {
        "headings": graph.headings,
        "keys": graph.keys,
        "alive": graph.alive,
        "parents": graph.parents,
        "children": graph.children,
        "record_topics": graph.record_topics,
        "topic_records": graph.topic_records,
    }


def _graph_from_obj(obj: dict) -> TopicGraph:
    n = len(obj["headings"])
    graph = TopicGraph(
        headings=list(obj["headings"]),
        keys=list(obj["keys"]),
        alive=list(obj["alive"]),
        parents=[list(p) for p in obj["parents"]],
        children=[list(c) for c in obj["children"]],
        direct_count=[0] * n,
        subtree_count=[0] * n,
        record_topics={r: list(ts) for r, ts in obj["record_topics"].items()},
        topic_records=[list(rs) for rs in obj["topic_records"]],
        key_to_id={k: t for t, k in enumerate(obj["keys"]) if t != 0 and obj["alive"][t]},
    )
    graph._finalize()  # recomputes counts/occurrences; also validates acyclicity
    return graph


def _index_to_obj(index: Index) -> dict:
    return {
        "postings": index.postings,
        "field_lengths": index.field_lengths,
        "avg_field_lengths": index.avg_field_lengths,
        "field_weights": index.field_weights,
        "k1": index.k1,
        "b": index.b,
        "n_records": index.n_records,
        "display": {r: list(d) for r, d in index.display.items()},
    }


def _index_from_obj(obj: dict) -> Index:
    return Index(
        postings=obj["postings"],
        field_lengths=obj["field_lengths"],
        avg_field_lengths=obj["avg_field_lengths"],
        field_weights=obj["field_weights"],
        k1=obj["k1"],
        b=obj["b"],
        n_records=obj["n_records"],
        display={r: (d[0], d[1], d[2]) for r, d in obj["display"].items()},
    )


def _bib_from_obj(obj: dict) -> BibRecord:
    return BibRecord(
        id=obj["id"],
        title=obj["title"],
        statement=obj.get("statement"),
        year=obj.get("year"),
        series=obj.get("series"),
        subjects=list(obj.get("subjects", [])),
    )


def _auth_from_obj(obj: dict) -> AuthorityRecord:
    return AuthorityRecord(
        id=obj["id"], heading=obj["heading"], broader=list(obj.get("broader", []))
    )


@dataclass
class IndexBundle:
    graph: TopicGraph
    index: Index
    bibs: list[BibRecord]
    auths: list[AuthorityRecord]
    prune_params: PruneParams
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._bib_by_id = {r.id: r for r in self.bibs}

    def bib(self, record_id: str) -> BibRecord | None:
        return self._bib_by_id.get(record_id)

    def _payload(self) -> dict:
        return {
            "version": FORMAT_VERSION,
            "prune": self.prune_params.as_dict(),
            "graph": _graph_to_obj(self.graph),
            "index": _index_to_obj(self.index),
            "records": {
                "bib": [bib_to_obj(r) for r in self.bibs],
                "auth": [auth_to_obj(a) for a in self.auths],
            },
        }

    def content_digest(self) -> str:
        return hashlib.sha256(_canonical(self._payload())).hexdigest()

    def to_bytes(self) -> bytes:
        body = dict(self._payload())
        body["meta"] = self.meta
        return MAGIC + b"\n" + _canonical(body) + b"\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "IndexBundle":
        if not data.startswith(MAGIC + b"\n"):
            raise BundleError("not an index bundle (bad magic)")
        try:
            body = json.loads(data[len(MAGIC) + 1 :].decode("ascii"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise BundleError(f"corrupt bundle payload: {exc}") from exc
        version = body.get("version")
        if version != FORMAT_VERSION:
            raise BundleError(f"unsupported bundle version {version!r} (want {FORMAT_VERSION})")
        try:
            return cls(
                graph=_graph_from_obj(body["graph"]),
                index=_index_from_obj(body["index"]),
                bibs=[_bib_from_obj(o) for o in body["records"]["bib"]],
                auths=[_auth_from_obj(o) for o in body["records"]["auth"]],
                prune_params=PruneParams(**body["prune"]),
                meta=body.get("meta", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BundleError(f"corrupt bundle payload: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "IndexBundle":
        return cls.from_bytes(Path(path).read_bytes())
