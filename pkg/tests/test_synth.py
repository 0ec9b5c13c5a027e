from lcsx.hierarchy import build_graph
from lcsx.synth import generate_collection


def test_deterministic_for_seed():
    a1, b1 = generate_collection(n_topics=50, n_records=80, seed=7)
    a2, b2 = generate_collection(n_topics=50, n_records=80, seed=7)
    assert a1 == a2 and b1 == b2
    a3, _ = generate_collection(n_topics=50, n_records=80, seed=8)
    assert a1 != a3


def test_all_subjects_have_authorities():
    auths, bibs = generate_collection(n_topics=40, n_records=60, seed=1)
    headings = {a.heading for a in auths}
    for b in bibs:
        assert set(b.subjects) <= headings
    graph, report = build_graph(auths, bibs)
    assert report.orphans == 0
    assert report.cycles_broken == 0  # parents only point at earlier topics


def test_power_law_concentration():
    auths, bibs = generate_collection(n_topics=100, n_records=400, seed=3)
    counts = {a.heading: 0 for a in auths}
    for b in bibs:
        for s in b.subjects:
            counts[s] += 1
    ranked = sorted(counts.values(), reverse=True)
    # head of the distribution dominates the tail
    assert sum(ranked[:10]) > sum(ranked[50:])
