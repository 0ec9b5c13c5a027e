"""Linked-view policies tying search results to the topic tree.

After a search, the two most-assigned topics among the first 100 ranked
results are "promising branches"; each is targeted to a concrete copy in the
redundant tree with the nearest-copy heuristic, which favors copies whose
path shares the most nodes with the user's last selected path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .hierarchy import ROOT_ID, TopicGraph, occurrence_count, validate_path
from .search import RankedResult

PROMISING_WINDOW = 100
PROMISING_LIMIT = 2

TreePath = tuple[int, ...]


@dataclass
class SessionState:
    """Client-held interaction state, passed per request. The engine never stores it."""

    last_selected: TreePath | None = None
    visited: frozenset[int] = field(default_factory=frozenset)
    active_query: list[str] | None = None
    topic_filter: tuple[int, bool] | None = None

    @property
    def descendants(self) -> bool:
        return self.topic_filter[1] if self.topic_filter else False


@dataclass
class PromisingBranch:
    topic: int
    path: TreePath
    support: int


def nearest_copy(graph: TopicGraph, topic: int, anchor: TreePath | None = None) -> TreePath:
    """The copy of ``topic`` whose path shares the most nodes with ``anchor``.

    Ties go to the shorter path, then the lexicographically smaller id
    sequence. Computed by dynamic programming over the ancestor subgraph, so
    cost is bounded by the ancestor count even when the copy count is huge.
    """
    graph.require_topic(topic)
    if anchor:
        validate_path(graph, anchor)
        anchor_set = set(anchor)
    else:
        anchor_set = {ROOT_ID}
    if topic == ROOT_ID:
        return (ROOT_ID,)

    closure = {topic}
    stack = [topic]
    while stack:
        for parent in graph.parents[stack.pop()]:
            if parent not in closure:
                closure.add(parent)
                stack.append(parent)

    # best[t] = (-overlap, length, path): min() picks max overlap, then
    # shortest, then lexicographically smallest root path ending at t.
    best: dict[int, tuple[int, int, TreePath]] = {
        ROOT_ID: (-(ROOT_ID in anchor_set), 1, (ROOT_ID,))
    }
    for node in graph._topo or ():
        if node not in closure or node == ROOT_ID:
            continue
        gain = -(node in anchor_set)
        best[node] = min(
            (neg + gain, length + 1, path + (node,))
            for neg, length, path in (best[p] for p in graph.parents[node])
        )
    return best[topic][2]


def copy_count(graph: TopicGraph, topic: int) -> int:
    """How many copies of the topic exist in the unfolded tree (UI badge)."""
    return occurrence_count(graph, topic)


def promising_branches(
    results: list[RankedResult], graph: TopicGraph, session: SessionState
) -> list[PromisingBranch]:
    """The <=2 most-assigned topics within the first 100 ranked results.

    Ties break by the better rank of the topic's best-ranked result, then by
    ascending heading key; each winner is placed via nearest_copy against the
    session's last selected path.
    """
    window = results[:PROMISING_WINDOW]
    support: dict[int, int] = {}
    best_rank: dict[int, int] = {}
    for position, result in enumerate(window):
        for topic, _heading in result.assigned_topics:
            support[topic] = support.get(topic, 0) + 1
            best_rank.setdefault(topic, position)
    ordered = sorted(support, key=lambda t: (-support[t], best_rank[t], graph.keys[t]))
    return [
        PromisingBranch(
            topic=t,
            path=nearest_copy(graph, t, session.last_selected),
            support=support[t],
        )
        for t in ordered[:PROMISING_LIMIT]
    ]


def select_topic(graph: TopicGraph, session: SessionState, path: TreePath | list[int]) -> SessionState:
    """Select a tree node: it becomes the filter, its topic is marked visited.

    An empty path clears the selection and filter; visited topics stay
    visited. The active query is untouched either way; the next search
    combines both.
    """
    if not path:
        return replace(session, last_selected=None, topic_filter=None)
    validate_path(graph, path)
    topic = path[-1]
    return replace(
        session,
        last_selected=tuple(path),
        visited=session.visited | {topic},
        topic_filter=(topic, session.descendants),
    )


def expand_to(graph: TopicGraph, session: SessionState, topic: int) -> TreePath:
    """Resolve a topic hyperlink to the copy nearest the session's selection.

    Expansion is not selection: the session (and its visited set) is unchanged.
    """
    return nearest_copy(graph, topic, session.last_selected)
