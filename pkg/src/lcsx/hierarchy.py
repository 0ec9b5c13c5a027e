"""Topic DAG construction, virtual tree unfolding, and pruning.

The collection's topics form a DAG (multiple broader terms are common), but
the browse surface is the *unfolded* tree in which a topic appears once under
every parent, recursively. That tree is never materialized: tree nodes are
addressed by the path of topic ids from the synthetic root, and per-topic
occurrence counts (= number of distinct root paths) are computed by dynamic
programming over the DAG.

Counting rule for tree_stats: ``tree_nodes`` counts every node of the
unfolded tree including the root, i.e. one node per distinct root path;
``unique_topics`` and ``duplicated_fraction`` range over non-root topics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .errors import InvalidPathError, LcsxError, NotFoundError
from .ingest.headings import display_form, normalize_heading
from .ingest.records import AuthorityRecord, BibRecord

ROOT_ID = 0
ROOT_LABEL = "All Collection Subjects"


@dataclass
class BuildReport:
    """What build_graph did: interning, orphan, cycle, and ancestor tallies."""

    topics: int = 0
    orphans: int = 0
    cycles_broken: int = 0
    ancestors_added: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "topics": self.topics,
            "orphans": self.orphans,
            "cycles_broken": self.cycles_broken,
            "ancestors_added": self.ancestors_added,
        }


@dataclass
class PruneParams:
    threshold: int = 1
    collapse_chains: bool = True

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise ValueError(f"prune threshold must be >= 1, got {self.threshold}")

    def as_dict(self) -> dict:
        return {"threshold": self.threshold, "collapse_chains": self.collapse_chains}


@dataclass
class Stats:
    unique_topics: int
    tree_nodes: int
    duplicated_fraction: float
    max_depth: int
    depth_counts: list[int]

    def as_dict(self) -> dict:
        return {
            "unique_topics": self.unique_topics,
            "tree_nodes": self.tree_nodes,
            "duplicated_fraction": self.duplicated_fraction,
            "max_depth": self.max_depth,
            "depth_counts": list(self.depth_counts),
        }


@dataclass
class PruneReport:
    removed_by_threshold: list[int]
    collapsed: list[int]
    stats_before: Stats
    stats_after: Stats

    def as_dict(self) -> dict:
        return {
            "removed_by_threshold": list(self.removed_by_threshold),
            "collapsed": list(self.collapsed),
            "tree_nodes_delta": self.stats_after.tree_nodes - self.stats_before.tree_nodes,
            "max_depth_delta": self.stats_after.max_depth - self.stats_before.max_depth,
            "stats_before": self.stats_before.as_dict(),
            "stats_after": self.stats_after.as_dict(),
        }


@dataclass
class ChildEntry:
    id: int
    heading: str
    direct_count: int
    subtree_count: int
    has_children: bool


@dataclass
class TopicGraph:
    """Interned topics plus child<->parent adjacency and assignment counts.

    Ids are dense and stable; pruning marks ids dead rather than renumbering,
    so paths and filters stored by clients stay valid for surviving topics.
    Immutable once built (single-writer build/prune, any number of readers).
    """

    headings: list[str] = field(default_factory=lambda: [ROOT_LABEL])
    keys: list[str] = field(default_factory=lambda: [""])
    alive: list[bool] = field(default_factory=lambda: [True])
    parents: list[list[int]] = field(default_factory=lambda: [[]])
    children: list[list[int]] = field(default_factory=lambda: [[]])
    direct_count: list[int] = field(default_factory=lambda: [0])
    subtree_count: list[int] = field(default_factory=lambda: [0])
    record_topics: dict[str, list[int]] = field(default_factory=dict)
    topic_records: list[list[str]] = field(default_factory=lambda: [[]])
    key_to_id: dict[str, int] = field(default_factory=dict)
    _occurrence: list[int] | None = None
    _topo: list[int] | None = None

    # -- accessors -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.headings)

    @property
    def n_topics(self) -> int:
        """Alive non-root topics."""
        return sum(self.alive) - 1

    @property
    def n_records(self) -> int:
        return len(self.record_topics)

    def is_topic(self, topic: int) -> bool:
        return 0 <= topic < len(self.headings) and self.alive[topic]

    def require_topic(self, topic: int) -> None:
        if not self.is_topic(topic):
            raise NotFoundError(f"unknown topic id {topic}")

    def heading(self, topic: int) -> str:
        self.require_topic(topic)
        return self.headings[topic]

    def lookup(self, key: str) -> int | None:
        return self.key_to_id.get(key)

    def topic_ids(self) -> list[int]:
        return [t for t in range(len(self.headings)) if self.alive[t] and t != ROOT_ID]

    # -- construction helpers (build/prune phase only) ---------------------

    def _intern(self, key: str, display: str) -> int:
        existing = self.key_to_id.get(key)
        if existing is not None:
            return existing
        topic = len(self.headings)
        self.headings.append(display)
        self.keys.append(key)
        self.alive.append(True)
        self.parents.append([])
        self.children.append([])
        self.direct_count.append(0)
        self.subtree_count.append(0)
        self.topic_records.append([])
        self.key_to_id[key] = topic
        return topic

    def _add_edge(self, child: int, parent: int) -> None:
        if parent not in self.parents[child]:
            self.parents[child].append(parent)
            self.children[parent].append(child)

    def _remove_edge(self, child: int, parent: int) -> None:
        self.parents[child].remove(parent)
        self.children[parent].remove(child)

    def _kill(self, topic: int) -> None:
        for p in list(self.parents[topic]):
            self._remove_edge(topic, p)
        for c in list(self.children[topic]):
            self._remove_edge(c, topic)
        self.alive[topic] = False
        self.key_to_id.pop(self.keys[topic], None)
        self.topic_records[topic] = []

    def _clone(self) -> "TopicGraph":
        return TopicGraph(
            headings=list(self.headings),
            keys=list(self.keys),
            alive=list(self.alive),
            parents=[list(p) for p in self.parents],
            children=[list(c) for c in self.children],
            direct_count=list(self.direct_count),
            subtree_count=list(self.subtree_count),
            record_topics={r: list(ts) for r, ts in self.record_topics.items()},
            topic_records=[list(rs) for rs in self.topic_records],
            key_to_id=dict(self.key_to_id),
        )

    def _finalize(self) -> None:
        """Sort adjacency canonically and recompute counts, topo order, occurrences."""
        for t in range(len(self.headings)):
            self.parents[t].sort()
            self.children[t].sort()
            self.topic_records[t].sort()
            self.direct_count[t] = len(self.topic_records[t])

        self._topo = self._topo_order()
        occ = [0] * len(self.headings)
        occ[ROOT_ID] = 1
        for t in self._topo:
            if t != ROOT_ID:
                occ[t] = sum(occ[p] for p in self.parents[t])
        self._occurrence = occ

        # subtree counts: distinct records in the descendant closure, via bitmasks
        rec_index = {r: i for i, r in enumerate(sorted(self.record_topics))}
        masks = [0] * len(self.headings)
        for t in reversed(self._topo):
            mask = 0
            for r in self.topic_records[t]:
                mask |= 1 << rec_index[r]
            for c in self.children[t]:
                mask |= masks[c]
            masks[t] = mask
            self.subtree_count[t] = mask.bit_count()

    def _topo_order(self) -> list[int]:
        """Root-first order with every parent before its children."""
        indegree = {t: len(self.parents[t]) for t in range(len(self.headings)) if self.alive[t]}
        queue = deque([t for t, d in sorted(indegree.items()) if d == 0])
        order: list[int] = []
        while queue:
            t = queue.popleft()
            order.append(t)
            for c in self.children[t]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    queue.append(c)
        if len(order) != len(indegree):
            raise LcsxError("topic graph contains a cycle; run break_cycles first")
        return order


# -- build ----------------------------------------------------------------


def build_graph(
    auths: list[AuthorityRecord], bibs: list[BibRecord]
) -> tuple[TopicGraph, BuildReport]:
    """Construct the collection's topic DAG.

    Interns every assigned bib subject, pulls in all broader-term ancestors
    reachable from an assigned topic, parents orphans (no authority match)
    and broader-less topics to the root, breaks cycles deterministically, and
    computes counts. Duplicate authority records for one normalized heading
    are merged (broader lists unioned), which is where post-normalization
    self-loops can appear; break_cycles removes them.
    """
    report = BuildReport()
    graph = TopicGraph()

    merged: dict[str, list[str]] = {}
    auth_display: dict[str, str] = {}
    for auth in auths:
        key = normalize_heading(auth.heading)
        if key not in merged:
            merged[key] = []
            auth_display[key] = display_form(auth.heading)
        merged[key].extend(auth.broader)

    def intern(key: str, raw: str) -> int:
        display = auth_display.get(key) or display_form(raw)
        return graph._intern(key, display)

    for bib in bibs:
        assigned: list[int] = []
        for subject in bib.subjects:
            key = normalize_heading(subject)
            topic = intern(key, subject)
            assigned.append(topic)
            graph.topic_records[topic].append(bib.id)
        graph.record_topics[bib.id] = assigned

    assigned_ids = graph.topic_ids()
    report.orphans = sum(1 for t in assigned_ids if graph.keys[t] not in merged)

    queue = deque(assigned_ids)
    expanded: set[int] = set()
    while queue:
        topic = queue.popleft()
        if topic in expanded:
            continue
        expanded.add(topic)
        for broader in merged.get(graph.keys[topic], []):
            bkey = normalize_heading(broader)
            parent = graph.lookup(bkey)
            if parent is None:
                parent = intern(bkey, broader)
                report.ancestors_added += 1
            graph._add_edge(topic, parent)
            if parent not in expanded:
                queue.append(parent)
    report.topics = graph.n_topics

    _, removed = break_cycles(graph)
    report.cycles_broken = len(removed)

    for topic in graph.topic_ids():
        if not graph.parents[topic]:
            graph._add_edge(topic, ROOT_ID)

    graph._finalize()
    return graph, report


def break_cycles(graph: TopicGraph) -> tuple[TopicGraph, list[tuple[int, int]]]:
    """Remove child->parent edges that close directed cycles.

    Deterministic: DFS roots are taken in ascending heading-key order and each
    topic's parents are explored in ascending key order; an edge into a topic
    currently on the traversal stack is removed. Idempotent: an acyclic graph
    comes back unchanged. Returns the (child, parent) edges removed.

    Runs as a build step, before counts are finalized.
    """
    removed: list[tuple[int, int]] = []
    color = [0] * len(graph.headings)  # 0 white, 1 grey, 2 black
    color[ROOT_ID] = 2

    def by_key(t: int) -> str:
        return graph.keys[t]

    for start in sorted(graph.topic_ids(), key=by_key):
        if color[start]:
            continue
        color[start] = 1
        stack: list[tuple[int, Iterator[int]]] = [
            (start, iter(sorted(graph.parents[start], key=by_key)))
        ]
        while stack:
            node, parent_iter = stack[-1]
            advanced = False
            for parent in parent_iter:
                if parent not in graph.parents[node]:
                    continue  # removed earlier in this walk
                if color[parent] == 1:
                    graph._remove_edge(node, parent)
                    removed.append((node, parent))
                elif color[parent] == 0:
                    color[parent] = 1
                    stack.append((parent, iter(sorted(graph.parents[parent], key=by_key))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return graph, removed


# -- unfolded-tree math -----------------------------------------------------


def occurrence_count(graph: TopicGraph, topic: int) -> int:
    """Number of distinct root paths ending at ``topic`` (copies in the tree)."""
    graph.require_topic(topic)
    if graph._occurrence is None:
        graph._finalize()
    return graph._occurrence[topic]


def tree_stats(graph: TopicGraph) -> Stats:
    """Size/shape figures of the virtual unfolded tree (root included)."""
    topics = graph.topic_ids()
    occs = [occurrence_count(graph, t) for t in topics]
    tree_nodes = 1 + sum(occs)
    duplicated = sum(1 for o in occs if o >= 2)

    depth_counts: list[int] = []
    level: dict[int, int] = {ROOT_ID: 1}
    while level:
        depth_counts.append(sum(level.values()))
        nxt: dict[int, int] = {}
        for t, n in level.items():
            for c in graph.children[t]:
                nxt[c] = nxt.get(c, 0) + n
        level = nxt

    return Stats(
        unique_topics=len(topics),
        tree_nodes=tree_nodes,
        duplicated_fraction=duplicated / len(topics) if topics else 0.0,
        max_depth=len(depth_counts) - 1,
        depth_counts=depth_counts,
    )


# -- pruning ----------------------------------------------------------------


def prune(graph: TopicGraph, params: PruneParams) -> tuple[TopicGraph, PruneReport]:
    """Drop unrepresentative topics, then optionally collapse empty chains.

    Pass 1 removes every topic whose subtree_count is below the threshold;
    monotonicity means whole DAG-subtrees fall together. Pass 2 repeatedly
    removes non-root topics with no direct records and exactly one child,
    reattaching the child to the removed topic's parents, until a fixpoint,
    sweeping in ascending id order. Counts are recomputed at the end.
    """
    before = tree_stats(graph)
    out = graph._clone()

    removed = [t for t in out.topic_ids() if out.subtree_count[t] < params.threshold]
    for topic in removed:
        out._kill(topic)
    if removed:
        removed_set = set(removed)
        for rec, topics in out.record_topics.items():
            out.record_topics[rec] = [t for t in topics if t not in removed_set]

    collapsed: list[int] = []
    if params.collapse_chains:
        changed = True
        while changed:
            changed = False
            for topic in out.topic_ids():
                if out.topic_records[topic] or len(out.children[topic]) != 1:
                    continue
                child = out.children[topic][0]
                grandparents = list(out.parents[topic])
                out._kill(topic)
                for parent in grandparents:
                    out._add_edge(child, parent)
                collapsed.append(topic)
                changed = True

    out._finalize()
    return out, PruneReport(
        removed_by_threshold=removed,
        collapsed=collapsed,
        stats_before=before,
        stats_after=tree_stats(out),
    )


# -- navigation ---------------------------------------------------------------


def validate_path(graph: TopicGraph, path: tuple[int, ...] | list[int]) -> None:
    """Check a root path is well formed; raises InvalidPathError at the first bad step."""
    if not path:
        raise InvalidPathError("empty path", step=0)
    if path[0] != ROOT_ID:
        raise InvalidPathError(f"path must start at root {ROOT_ID}, got {path[0]}", step=0)
    for i, topic in enumerate(path):
        if not graph.is_topic(topic):
            raise InvalidPathError(f"unknown topic id {topic}", step=i)
        if i > 0 and topic not in graph.children[path[i - 1]]:
            raise InvalidPathError(
                f"{topic} is not a child of {path[i - 1]}", step=i
            )


def children_of(graph: TopicGraph, path: tuple[int, ...] | list[int]) -> list[ChildEntry]:
    """Children of the tree node addressed by ``path``, in browse order.

    Order: descending subtree_count, then ascending heading key. Cost is
    proportional to the child count; the unfolded tree is never expanded.
    """
    validate_path(graph, path)
    node = path[-1]
    entries = [
        ChildEntry(
            id=c,
            heading=graph.headings[c],
            direct_count=graph.direct_count[c],
            subtree_count=graph.subtree_count[c],
            has_children=bool(graph.children[c]),
        )
        for c in graph.children[node]
    ]
    entries.sort(key=lambda e: (-e.subtree_count, graph.keys[e.id]))
    return entries


def records_at(graph: TopicGraph, topic: int, descendants: bool = False) -> list[str]:
    """Record ids assigned to a topic, optionally including its DAG descendants."""
    graph.require_topic(topic)
    if not descendants:
        return list(graph.topic_records[topic])
    seen: set[int] = set()
    stack = [topic]
    found: set[str] = set()
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        found.update(graph.topic_records[t])
        stack.extend(graph.children[t])
    return sorted(found)
