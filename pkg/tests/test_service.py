import json

import pytest
from fastapi.testclient import TestClient

from lcsx.service import create_app

ERROR_KEYS = {"code", "message"}


@pytest.fixture(scope="module")
def golden(fixtures_dir):
    return json.loads((fixtures_dir / "sci.golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def stats_golden(fixtures_dir):
    return json.loads((fixtures_dir / "sci.stats.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def client(sci_bundle):
    return TestClient(create_app(sci_bundle))


def test_stats_matches_golden(client, stats_golden, sci_bundle):
    body = client.get("/api/stats").json()
    for key, value in stats_golden.items():
        assert body[key] == value
    assert body["records"] == len(sci_bundle.bibs)
    assert body["prune"] == {"threshold": 1, "collapse_chains": True}


def test_children_of_root_matches_golden(client, golden):
    body = client.get("/api/tree/children", params={"path": "0"}).json()
    assert body["path"] == [0]
    assert body["children"] == golden["children_root"]


def test_children_of_leaf_is_empty(client, golden):
    fem = golden["topics"]["finite element method"]
    eng = golden["topics"]["engineering"]
    dp = client.get("/api/tree/children", params={"path": f"0,{eng},{fem}"}).json()
    leaf = dp["children"][0]["id"] if dp["children"] else None
    if leaf is not None:
        body = client.get("/api/tree/children", params={"path": f"0,{eng},{fem},{leaf}"}).json()
        assert body["children"] == []


def test_children_malformed_path(client):
    resp = client.get("/api/tree/children", params={"path": "0,,3"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "INVALID_PATH"


def test_children_broken_edge(client, golden):
    fem = golden["topics"]["finite element method"]
    resp = client.get("/api/tree/children", params={"path": f"0,{fem}"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "INVALID_PATH"


def test_search_matches_golden(client, golden):
    want = golden["search_finite_element"]
    resp = client.post("/api/search", json={"query": want["query"]})
    body = resp.json()
    assert body["total"] == want["total"]
    assert [r["id"] for r in body["results"]] == want["top_ids"]
    assert [r["score"] for r in body["results"]] == want["top_scores"]
    got_promising = [
        {"topic": p["topic"], "heading": p["heading"], "support": p["support"], "path": p["path"]}
        for p in body["promising"]
    ]
    assert got_promising == want["promising"]


def test_search_promising_respects_anchor(client, golden):
    want = golden["locate_fem_from_math"]
    resp = client.post(
        "/api/search",
        json={"query": golden["search_finite_element"]["query"], "last_selected": want["anchor"]},
    )
    assert resp.json()["promising"][0]["path"] == want["path"]


def test_search_empty_body(client):
    resp = client.post("/api/search", json={})
    assert resp.status_code == 400
    assert resp.json()["code"] == "EMPTY_QUERY"


def test_search_topic_only_listing(client, golden):
    t = golden["topic_listing_structural"]["topic"]
    body = client.post("/api/search", json={"topic": t}).json()
    assert [r["id"] for r in body["results"]] == golden["topic_listing_structural"]["direct_ids"]
    assert all(r["score"] == 0.0 for r in body["results"])
    desc = client.post("/api/search", json={"topic": t, "descendants": True}).json()
    assert [r["id"] for r in desc["results"]] == golden["topic_listing_structural"]["descendant_ids"][:10]


def test_search_filter_with_query(client, golden):
    t = golden["topics"]["structural analysis (engineering)"]
    body = client.post("/api/search", json={"query": "finite element", "topic": t}).json()
    assert body["total"] == 2  # b01 and b32 carry this topic among the 11 hits
    assert {r["id"] for r in body["results"]} == {"b01", "b32"}


def test_search_paging_consistency(client):
    full = client.post("/api/search", json={"query": "finite element", "limit": 100}).json()
    pages = []
    for offset in (0, 4, 8):
        page = client.post(
            "/api/search", json={"query": "finite element", "limit": 4, "offset": offset}
        ).json()
        assert page["total"] == full["total"]
        pages.extend(page["results"])
    assert [r["id"] for r in pages] == [r["id"] for r in full["results"]]


def test_search_limit_capped(client):
    resp = client.post("/api/search", json={"query": "x", "limit": 101})
    assert resp.status_code == 400
    assert resp.json()["code"] == "BAD_REQUEST"


def test_locate_from_math_anchor(client, golden):
    want = golden["locate_fem_from_math"]
    anchor = ",".join(str(t) for t in want["anchor"])
    body = client.get("/api/locate", params={"topic": want["topic"], "anchor": anchor}).json()
    assert body["path"] == want["path"]
    assert body["copy_count"] == want["copy_count"]


def test_locate_without_anchor_uses_tie_breaks(client, golden):
    want = golden["search_finite_element"]["promising"][0]
    body = client.get("/api/locate", params={"topic": want["topic"]}).json()
    assert body["path"] == want["path"]


def test_locate_unknown_topic(client):
    resp = client.get("/api/locate", params={"topic": 9999})
    assert resp.status_code == 404
    assert resp.json()["code"] == "NOT_FOUND"


def test_locate_stale_anchor_degrades_to_none(client, golden):
    want = golden["search_finite_element"]["promising"][0]
    body = client.get(
        "/api/locate", params={"topic": want["topic"], "anchor": "0,9999"}
    ).json()
    assert body["path"] == want["path"]


def test_record_golden(client, golden):
    want = golden["record_b01"]
    body = client.get(f"/api/record/{want['id']}").json()
    assert body == want


def test_record_unknown(client):
    resp = client.get("/api/record/nope")
    assert resp.status_code == 404
    assert resp.json()["code"] == "NOT_FOUND"


def test_record_id_percent_decoding(client, golden):
    body = client.get("/api/record/b%30%31").json()  # "b01" with encoded digits
    assert body["id"] == "b01"


def test_error_bodies_conform_to_schema(client):
    for resp in (
        client.post("/api/search", json={}),
        client.get("/api/locate", params={"topic": 9999}),
        client.get("/api/tree/children", params={"path": "zzz"}),
        client.get("/api/record/nope"),
        client.post("/api/search", json={"query": "x", "limit": -3}),
        client.get("/api/nonexistent"),
    ):
        assert resp.status_code >= 400
        assert set(resp.json().keys()) == ERROR_KEYS


def test_no_bundle_returns_503():
    empty = TestClient(create_app(None))
    resp = empty.get("/api/stats")
    assert resp.status_code == 503
    assert set(resp.json().keys()) == ERROR_KEYS


def test_statelessness_requests_commute(client, golden):
    fem = golden["topics"]["finite element method"]
    calls = [
        ("GET", "/api/stats", None),
        ("POST", "/api/search", {"query": "finite element"}),
        ("GET", f"/api/locate?topic={fem}", None),
        ("POST", "/api/search", {"topic": golden["topic_listing_structural"]["topic"]}),
        ("GET", "/api/tree/children?path=0", None),
    ]

    def run(order):
        out = {}
        for i in order:
            method, url, body = calls[i]
            resp = client.post(url, json=body) if method == "POST" else client.get(url)
            out[i] = resp.content
        return out

    forward = run(range(len(calls)))
    backward = run(list(reversed(range(len(calls)))))
    assert forward == backward
