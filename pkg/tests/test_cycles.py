from lcsx.hierarchy import ROOT_ID, break_cycles, build_graph
from lcsx.ingest.records import AuthorityRecord, BibRecord


def build(auths_spec, subjects):
    auths = [AuthorityRecord(id=f"a{i}", heading=h, broader=list(b)) for i, (h, b) in enumerate(auths_spec)]
    bibs = [BibRecord(id="b1", title="t", subjects=list(subjects))]
    return build_graph(auths, bibs)


def test_two_cycle_removes_exactly_one_edge_deterministically():
    outcomes = set()
    for _ in range(10):
        graph, report = build([("A", ["B"]), ("B", ["A"])], ["A", "B"])
        a, b = graph.lookup("a"), graph.lookup("b")
        # exactly one of the two possible removals happened
        edges = {(c, p) for c in (a, b) for p in graph.parents[c] if p != ROOT_ID}
        assert edges in ({(a, b)}, {(b, a)})
        assert report.cycles_broken == 1
        outcomes.add(frozenset(edges))
    assert len(outcomes) == 1, "cycle breaking must be deterministic across runs"
    # DFS starts at the lexicographically earlier root "a"; the back edge
    # encountered is b->a, so A keeps its broader term B.
    graph, _ = build([("A", ["B"]), ("B", ["A"])], ["A", "B"])
    a, b = graph.lookup("a"), graph.lookup("b")
    assert graph.parents[a] == [b]
    assert graph.parents[b] == [ROOT_ID]


def test_acyclic_graph_unchanged():
    graph, report = build([("A", ["B"]), ("B", [])], ["A"])
    assert report.cycles_broken == 0
    regraph, removed = break_cycles(graph)
    assert removed == []


def test_three_cycle():
    graph, report = build([("A", ["B"]), ("B", ["C"]), ("C", ["A"])], ["A", "B", "C"])
    assert report.cycles_broken == 1
    # still connected: every topic reaches root
    for t in graph.topic_ids():
        seen, stack = set(), [t]
        while stack:
            x = stack.pop()
            seen.add(x)
            stack.extend(p for p in graph.parents[x] if p not in seen)
        assert ROOT_ID in seen


def test_idempotent_on_built_graph():
    graph, _ = build([("A", ["B"]), ("B", ["A"]), ("C", ["A", "B"])], ["A", "B", "C"])
    _, removed = break_cycles(graph)
    assert removed == []
