import random

import pytest

from lcsx.coordination import (
    SessionState,
    copy_count,
    expand_to,
    nearest_copy,
    promising_branches,
    select_topic,
)
from lcsx.errors import InvalidPathError, NotFoundError
from lcsx.hierarchy import ROOT_ID, build_graph, occurrence_count
from lcsx.ingest.records import AuthorityRecord, BibRecord
from lcsx.search import RankedResult
from oracles import brute_nearest_copy, brute_promising, unfold_paths
from randgen import random_collection


@pytest.fixture()
def two_copy_graph():
    # FEM under root->Science->Mathematics->Numerical analysis and under root->Engineering
    auths = [
        AuthorityRecord(id="a1", heading="Science"),
        AuthorityRecord(id="a2", heading="Engineering"),
        AuthorityRecord(id="a3", heading="Mathematics", broader=["Science"]),
        AuthorityRecord(id="a4", heading="Numerical analysis", broader=["Mathematics"]),
        AuthorityRecord(id="a5", heading="Finite element method", broader=["Numerical analysis", "Engineering"]),
    ]
    bibs = [
        BibRecord(id="b1", title="t", subjects=["Finite element method"]),
        BibRecord(id="b2", title="t", subjects=["Mathematics"]),
    ]
    graph, _ = build_graph(auths, bibs)
    return graph


def result(rid, topics, graph):
    pairs = [(graph.lookup(t.casefold()), t) for t in topics]
    return RankedResult(id=rid, score=1.0, title=rid, year=None, series=None, assigned_topics=pairs)


def test_nearest_copy_prefers_anchor_overlap(two_copy_graph):
    g = two_copy_graph
    sci, math_, na = g.lookup("science"), g.lookup("mathematics"), g.lookup("numerical analysis")
    fem, eng = g.lookup("finite element method"), g.lookup("engineering")
    anchor = (ROOT_ID, sci, math_)
    assert nearest_copy(g, fem, anchor) == (ROOT_ID, sci, math_, na, fem)


def test_nearest_copy_without_anchor_prefers_shorter_path(two_copy_graph):
    g = two_copy_graph
    fem, eng = g.lookup("finite element method"), g.lookup("engineering")
    assert nearest_copy(g, fem, None) == (ROOT_ID, eng, fem)


def test_nearest_copy_single_copy_ignores_anchor(two_copy_graph):
    g = two_copy_graph
    sci, math_ = g.lookup("science"), g.lookup("mathematics")
    eng = g.lookup("engineering")
    assert nearest_copy(g, math_, (ROOT_ID, eng)) == (ROOT_ID, sci, math_)


def test_nearest_copy_of_root(two_copy_graph):
    assert nearest_copy(two_copy_graph, ROOT_ID, None) == (ROOT_ID,)


def test_nearest_copy_unknown_topic(two_copy_graph):
    with pytest.raises(NotFoundError):
        nearest_copy(two_copy_graph, 999, None)


def test_anchor_locality(two_copy_graph):
    # anchor ending at a parent of the topic extends by one step
    g = two_copy_graph
    sci, math_, na = g.lookup("science"), g.lookup("mathematics"), g.lookup("numerical analysis")
    fem = g.lookup("finite element method")
    anchor = (ROOT_ID, sci, math_, na)
    assert nearest_copy(g, fem, anchor) == anchor + (fem,)


def test_promising_branches_hand_count(two_copy_graph):
    g = two_copy_graph
    auths = [
        AuthorityRecord(id="a1", heading="FEM"),
        AuthorityRecord(id="a2", heading="BEM"),
        AuthorityRecord(id="a3", heading="Interp"),
    ]
    bibs = [BibRecord(id="b1", title="t", subjects=["FEM", "BEM", "Interp"])]
    graph, _ = build_graph(auths, bibs)
    results = [
        result("r1", ["FEM"], graph),
        result("r2", ["FEM", "BEM"], graph),
        result("r3", ["BEM"], graph),
        result("r4", ["FEM"], graph),
        result("r5", ["Interp"], graph),
    ]
    branches = promising_branches(results, graph, SessionState())
    assert [(graph.headings[b.topic], b.support) for b in branches] == [("FEM", 3), ("BEM", 2)]
    assert branches[0].path == (ROOT_ID, graph.lookup("fem"))


def test_promising_empty_results(two_copy_graph):
    assert promising_branches([], two_copy_graph, SessionState()) == []


def test_promising_window_is_first_100(two_copy_graph):
    g = two_copy_graph
    fem = g.lookup("finite element method")
    math_ = g.lookup("mathematics")
    results = [result(f"r{i:03d}", ["Mathematics"], g) for i in range(100)]
    results += [result(f"x{i:03d}", ["Finite element method"], g) for i in range(50)]
    branches = promising_branches(results, g, SessionState())
    assert [b.topic for b in branches] == [math_]
    assert branches[0].support == 100


def test_promising_single_result(two_copy_graph):
    g = two_copy_graph
    branches = promising_branches([result("r1", ["Mathematics"], g)], g, SessionState())
    assert len(branches) == 1 and branches[0].support == 1


def test_select_topic_updates_session(two_copy_graph):
    g = two_copy_graph
    sci, math_ = g.lookup("science"), g.lookup("mathematics")
    s0 = SessionState()
    s1 = select_topic(g, s0, (ROOT_ID, sci))
    assert s1.topic_filter == (sci, False)
    assert s1.visited == {sci}
    s2 = select_topic(g, s1, (ROOT_ID, sci, math_))
    assert s2.visited == {sci, math_}
    assert s2.last_selected == (ROOT_ID, sci, math_)
    # clearing the filter is not unvisiting
    s3 = select_topic(g, s2, ())
    assert s3.topic_filter is None and s3.last_selected is None
    assert s3.visited == {sci, math_}
    # original sessions untouched (value semantics)
    assert s0.visited == frozenset()


def test_select_topic_invalid_path(two_copy_graph):
    with pytest.raises(InvalidPathError):
        select_topic(two_copy_graph, SessionState(), (ROOT_ID, 999))


def test_select_topic_preserves_descendants_flag(two_copy_graph):
    g = two_copy_graph
    sci, math_ = g.lookup("science"), g.lookup("mathematics")
    s = SessionState(topic_filter=(sci, True))
    s2 = select_topic(g, s, (ROOT_ID, sci, math_))
    assert s2.topic_filter == (math_, True)


def test_expand_to_does_not_touch_visited(two_copy_graph):
    g = two_copy_graph
    sci, math_ = g.lookup("science"), g.lookup("mathematics")
    fem = g.lookup("finite element method")
    session = SessionState(last_selected=(ROOT_ID, sci, math_))
    path = expand_to(g, session, fem)
    assert path[-1] == fem and sci in path
    assert session.visited == frozenset()
    assert expand_to(g, SessionState(), ROOT_ID) == (ROOT_ID,)


def test_copy_count(two_copy_graph):
    g = two_copy_graph
    assert copy_count(g, g.lookup("finite element method")) == 2
    assert copy_count(g, g.lookup("mathematics")) == 1


@pytest.mark.parametrize("seed", range(15))
def test_nearest_copy_matches_exhaustive_enumeration(seed):
    rng = random.Random(seed)
    auths, bibs = random_collection(rng, max_topics=20, max_edges=40)
    graph, _ = build_graph(auths, bibs)
    paths = unfold_paths(graph.children)
    topics = graph.topic_ids()
    if not topics:
        return
    for _ in range(5):
        topic = rng.choice(topics)
        if occurrence_count(graph, topic) > 200:
            continue
        anchor = rng.choice(paths) if rng.random() < 0.8 else None
        assert nearest_copy(graph, topic, anchor) == brute_nearest_copy(paths, topic, anchor)


@pytest.mark.parametrize("seed", range(10))
def test_promising_matches_brute_recount(seed):
    rng = random.Random(seed + 500)
    auths, bibs = random_collection(rng, max_topics=15)
    graph, _ = build_graph(auths, bibs)
    topics = graph.topic_ids()
    if not topics:
        return
    results = []
    for i in range(rng.randint(0, 150)):
        assigned = rng.sample(topics, k=min(len(topics), rng.randint(0, 3)))
        results.append(
            RankedResult(
                id=f"r{i:03d}", score=float(150 - i), title="t", year=None, series=None,
                assigned_topics=[(t, graph.headings[t]) for t in assigned],
            )
        )
    got = [(b.topic, b.support) for b in promising_branches(results, graph, SessionState())]
    want = brute_promising([[t for t, _ in r.assigned_topics] for r in results], graph.keys)
    assert got == want
