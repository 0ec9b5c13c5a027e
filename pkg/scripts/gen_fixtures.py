#!/usr/bin/env python3
"""Regenerate everything under fixtures/.

Sources (sci.jsonl, sci.auth.jsonl, mini*.mrc) are authored here; golden
values (sci.stats.json, sci.golden.json) are computed by the brute-force
oracles in tests/oracles.py, never by the engine code paths they check.
Rerunning is idempotent.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))
sys.path.insert(0, str(ROOT / "src"))

import marcwriter  # noqa: E402
import oracles  # noqa: E402
from lcsx.hierarchy import ROOT_ID, PruneParams, build_graph, prune  # noqa: E402
from lcsx.ingest.records import AuthorityRecord, BibRecord  # noqa: E402

FIXTURES = ROOT / "fixtures"

# heading -> broader terms. Astronomy/Botany are never assigned and must be
# excluded from the built graph; Probabilities exists only as a broader term.
AUTHORITIES: list[tuple[str, list[str]]] = [
    ("Science", []),
    ("Engineering", []),
    ("Mathematics", ["Science"]),
    ("Physics", ["Science"]),
    ("Computer science", ["Science"]),
    ("Mathematical analysis", ["Mathematics"]),
    ("Numerical analysis", ["Mathematics", "Mathematical analysis"]),
    ("Differential equations", ["Mathematical analysis"]),
    ("Differential equations, Partial", ["Differential equations"]),
    ("Finite element method", ["Numerical analysis", "Engineering"]),
    ("Boundary element methods", ["Numerical analysis", "Engineering"]),
    ("Finite element method--Data processing", ["Finite element method"]),
    ("Interpolation", ["Numerical analysis"]),
    ("Monte Carlo method", ["Numerical analysis", "Mathematical statistics"]),
    ("Mathematical statistics", ["Mathematics"]),
    ("Matrices", ["Algebra"]),
    ("Algebra", ["Mathematics"]),
    ("Mechanics", ["Physics"]),
    ("Fluid mechanics", ["Mechanics", "Engineering"]),
    ("Heat", ["Physics"]),
    ("Heat--Transmission", ["Heat"]),
    ("Structural analysis (Engineering)", ["Engineering"]),
    ("Structural dynamics", ["Structural analysis (Engineering)"]),
    ("Civil engineering", ["Engineering"]),
    ("Bridges", ["Civil engineering"]),
    ("Soil mechanics", ["Civil engineering", "Mechanics"]),
    ("Algorithms", ["Computer science", "Mathematics"]),
    ("Data structures (Computer science)", ["Computer science"]),
    ("Computer programming", ["Computer science"]),
    ("Numerical calculations", ["Numerical analysis"]),
    ("Error analysis (Mathematics)", ["Numerical analysis"]),
    ("Calculus", ["Mathematical analysis"]),
    ("Elasticity", ["Mechanics"]),
    ("Vibration", ["Mechanics"]),
    ("Thermodynamics", ["Physics"]),
    ("Stochastic processes", ["Probabilities"]),
    ("Approximation theory", ["Mathematical analysis"]),
    ("Spline theory", ["Approximation theory", "Interpolation"]),
    ("Galerkin methods", ["Numerical analysis"]),
    ("Wave motion, Theory of", ["Mechanics"]),
    ("Astronomy", ["Science"]),
    ("Botany", ["Science"]),
]

# id, title, statement, year, series, subjects
RECORDS: list[tuple] = [
    ("b01", "The finite element method in engineering analysis", "by R. W. Cloud", 1982, None,
     ["Finite element method", "Structural analysis (Engineering)"]),
    ("b02", "Finite elements", "by A. R. Mitchell and R. Wait", 1986, "Applied mathematics monographs",
     ["Finite element method"]),
    ("b03", "Introduction to finite and boundary element methods for engineers", None, 1992, None,
     ["Finite element method", "Boundary element methods"]),
    ("b04", "Boundary element techniques in solid mechanics", None, 1984, None,
     ["Boundary element methods", "Elasticity"]),
    ("b05", "The scaled boundary finite element approach", None, 2003, None,
     ["Finite element method", "Boundary element methods"]),
    ("b06", "Mixed and hybrid finite element formulations", None, 1989, "Lecture notes in computational mechanics",
     ["Finite element method", "Galerkin methods"]),
    ("b07", "Finite element programming with sparse matrices", None, 1996, None,
     ["Finite element method--Data processing", "Matrices"]),
    ("b08", "Adaptive mesh refinement for elliptic problems", None, 1994, None,
     ["Finite element method", "Differential equations, Partial"]),
    ("b09", "A first course in numerical analysis", "by A. Ralston", 1978, None, ["Numerical analysis"]),
    ("b10", "Numerical recipes for scientific computing", None, 1986, None,
     ["Numerical calculations", "Algorithms"]),
    ("b11", "Spline functions and approximation theory", None, 1973, None,
     ["Spline theory", "Approximation theory"]),
    ("b12", "Interpolation and approximation", "by P. J. Davies", 1963, None,
     ["Interpolation", "Approximation theory"]),
    ("b13", "Monte Carlo simulation methods in statistical physics", None, 1999, None,
     ["Monte Carlo method", "Stochastic processes"]),
    ("b14", "Error bounds in numerical computation", None, 1967, None, ["Error analysis (Mathematics)"]),
    ("b15", "Partial differential equations of mathematical physics", None, 1957, None,
     ["Differential equations, Partial", "Physics"]),
    ("b16", "Ordinary differential equations", None, 1955, None, ["Differential equations"]),
    ("b17", "Advanced calculus for engineers", None, 1949, None, ["Calculus"]),
    ("b18", "Linear algebra and matrix theory", None, 1971, None, ["Algebra", "Matrices"]),
    ("b19", "The design and analysis of computer algorithms", None, 2001, None,
     ["Algorithms", "Computer programming"]),
    ("b20", "Data structures and program design", None, 1987, None,
     ["Data structures (Computer science)", "Computer programming"]),
    ("b21", "Heat transmission in building structures", None, 1963, None,
     ["Heat--Transmission", "Structural analysis (Engineering)"]),
    ("b22", "Thermodynamics for engineers", None, 1990, None, ["Thermodynamics"]),
    ("b23", "Fluid mechanics for civil engineers", None, 1975, None, ["Fluid mechanics", "Civil engineering"]),
    ("b24", "Soil mechanics in engineering practice", "by K. Terzaghi", 1968, None, ["Soil mechanics"]),
    ("b25", "The dynamics of bridge structures", None, 1979, None, ["Bridges", "Structural dynamics"]),
    ("b26", "Vibration problems in engineering", None, 1956, None, ["Vibration", "Mechanics"]),
    ("b27", "Wave propagation in elastic solids", None, 1973, None, ["Wave motion, Theory of", "Elasticity"]),
    ("b28", "Statistical methods for research workers", None, 1954, None, ["Mathematical statistics"]),
    ("b29", "How to fix a leaky faucet", None, 1995, None, ["Home repair"]),
    ("b30", "Essays on the history of mechanics", None, 1960, None, ["mechanics", "Science"]),
    ("b31", "Variational methods for finite element analysis", None, 1975, None,
     ["Finite element method", "Calculus"]),
    ("b32", "The finite strip method in structural mechanics", None, 1985, None,
     ["Finite element method", "Structural analysis (Engineering)"]),
    ("b33", "Finite element and finite difference methods in heat transfer", None, 1991, None,
     ["Finite element method", "Heat--Transmission"]),
    ("b34", "Nonlinear finite element analysis of shells", None, 1998, None,
     ["Finite element method", "Structural dynamics"]),
]


def write_sources() -> tuple[list[AuthorityRecord], list[BibRecord]]:
    # deliberately non-canonical JSONL (key order, stray unknown field):
    # parsers must not care, and the export round trip re-canonicalizes.
    auth_lines = []
    for i, (heading, broader) in enumerate(AUTHORITIES, start=1):
        obj = {"heading": heading, "id": f"sh{i:04d}"}
        if broader:
            obj["broader"] = broader
        auth_lines.append(json.dumps(obj, ensure_ascii=False))
    (FIXTURES / "sci.auth.jsonl").write_text("\n".join(auth_lines) + "\n", encoding="utf-8")

    bib_lines = []
    for rec_id, title, statement, year, series, subjects in RECORDS:
        obj = {"title": title, "id": rec_id, "subjects": subjects}
        if year is not None:
            obj["year"] = year
        if statement is not None:
            obj["statement"] = statement
        if series is not None:
            obj["series"] = series
        if rec_id == "b02":
            obj["marc_source"] = "ignored by parsers"
        bib_lines.append(json.dumps(obj, ensure_ascii=False))
    (FIXTURES / "sci.jsonl").write_text("\n".join(bib_lines) + "\n", encoding="utf-8")

    auths = [
        AuthorityRecord(id=f"sh{i:04d}", heading=h, broader=list(b))
        for i, (h, b) in enumerate(AUTHORITIES, start=1)
    ]
    bibs = [
        BibRecord(id=r, title=t, statement=st, year=y, series=se, subjects=list(su))
        for r, t, st, y, se, su in RECORDS
    ]
    return auths, bibs


def write_marc() -> None:
    bib_data = (
        marcwriter.encode_bib(
            "m1",
            title_a="Finite elements",
            title_b="an introduction",
            pub_year="c1986.",
            series="Texas applied mathematics",
            subjects=[[("a", "Finite element method")],
                      [("a", "Finite element method"), ("x", "Data processing")]],
        )
        + marcwriter.encode_record(
            [("001", "m2"), ("245", [("a", "Boundary elements")]),
             ("264", [("c", "2002")]),
             ("650", [("a", "Boundary element methods")]),
             ("651", [("a", "Texas")])],
            record_type="a",
        )
        + marcwriter.encode_bib(
            "m3",
            title_a="Numerical métodos",
            subjects=[[("a", "Análisis numérico"), ("y", "20th century")]],
        )
    )
    (FIXTURES / "mini.mrc").write_bytes(bib_data)

    auth_data = marcwriter.encode_auth(
        "ma1",
        heading=[("a", "Finite element method")],
        broader=[[("a", "Numerical analysis")]],
        related=[[("a", "Finite strip method")]],
    ) + marcwriter.encode_auth(
        "ma2",
        heading=[("a", "Finite element method"), ("x", "Data processing")],
        broader=[[("a", "Finite element method")]],
    )
    (FIXTURES / "mini.auth.mrc").write_bytes(auth_data)

    fields = {
        "bib": [
            {"id": "m1", "title": "Finite elements an introduction", "year": 1986,
             "series": "Texas applied mathematics",
             "subjects": ["Finite element method", "Finite element method--Data processing"]},
            {"id": "m2", "title": "Boundary elements", "year": 2002, "series": None,
             "subjects": ["Boundary element methods"]},
            {"id": "m3", "title": "Numerical métodos", "year": None, "series": None,
             "subjects": ["Análisis numérico--20th century"]},
        ],
        "auth": [
            {"id": "ma1", "heading": "Finite element method", "broader": ["Numerical analysis"]},
            {"id": "ma2", "heading": "Finite element method--Data processing",
             "broader": ["Finite element method"]},
        ],
    }
    (FIXTURES / "mini.fields.json").write_text(
        json.dumps(fields, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def compute_goldens(auths: list[AuthorityRecord], bibs: list[BibRecord]) -> None:
    # The goldens describe the default-built bundle: build + prune(threshold 1,
    # collapse on). The engine assigns ids and applies prune; every derived
    # value (unfolding, closures, scores, winners) is recomputed by oracles.
    built, report = build_graph(auths, bibs)
    assert report.orphans == 1, report.as_dict()
    assert built.lookup("astronomy") is None
    graph, prune_report = prune(built, PruneParams())
    # the record-less single-child chain topics collapse away
    assert sorted(built.headings[t] for t in prune_report.collapsed) == ["Heat", "Probabilities"]

    paths = oracles.unfold_paths(graph.children)
    per_topic = oracles.path_count_per_topic(paths)
    topics = graph.topic_ids()
    occs = [per_topic[t] for t in topics]
    stats = {
        "unique_topics": len(topics),
        "tree_nodes": len(paths),
        "duplicated_fraction": sum(1 for o in occs if o >= 2) / len(topics),
        "max_depth": max(len(p) - 1 for p in paths),
        "depth_counts": oracles.brute_depth_counts(paths),
    }
    (FIXTURES / "sci.stats.json").write_text(json.dumps(stats, indent=2) + "\n", encoding="utf-8")

    def closure_records(t: int) -> list[str]:
        return oracles.brute_closure_records(graph.children, graph.topic_records, t)

    children_root = [
        {
            "id": c,
            "heading": graph.headings[c],
            "direct_count": len(graph.topic_records[c]),
            "subtree_count": len(closure_records(c)),
            "has_children": bool(graph.children[c]),
            "copy_count": per_topic[c],
        }
        for c in graph.children[ROOT_ID]
    ]
    children_root.sort(key=lambda e: (-e["subtree_count"], graph.keys[e["id"]]))

    ranked = oracles.naive_rank(bibs, graph.record_topics, graph.headings, ["finite", "element"])
    promising_counts = oracles.brute_promising(
        [graph.record_topics[rid] for rid, _ in ranked], graph.keys
    )
    fem = graph.lookup("finite element method")
    assert promising_counts[0][0] == fem, promising_counts
    assert len(ranked) == 11, [r for r, _ in ranked]
    promising = [
        {
            "topic": t,
            "heading": graph.headings[t],
            "support": support,
            "path": list(oracles.brute_nearest_copy(paths, t, None)),
        }
        for t, support in promising_counts
    ]

    sci, math_ = graph.lookup("science"), graph.lookup("mathematics")
    anchor = [ROOT_ID, sci, math_]
    math_side = oracles.brute_nearest_copy(paths, fem, tuple(anchor))
    na = graph.lookup("numerical analysis")
    assert math_side == (ROOT_ID, sci, math_, na, fem), math_side

    b01 = next(b for b in bibs if b.id == "b01")
    golden = {
        "topics": {
            "finite element method": fem,
            "boundary element methods": graph.lookup("boundary element methods"),
            "science": sci,
            "mathematics": math_,
            "numerical analysis": na,
            "engineering": graph.lookup("engineering"),
            "structural analysis (engineering)": graph.lookup("structural analysis (engineering)"),
        },
        "children_root": children_root,
        "search_finite_element": {
            "query": "finite element",
            "total": len(ranked),
            "top_ids": [rid for rid, _ in ranked[:10]],
            "top_scores": [round(score, 6) for _, score in ranked[:10]],
            "promising": promising,
        },
        "locate_fem_from_math": {
            "topic": fem,
            "anchor": anchor,
            "path": list(math_side),
            "copy_count": per_topic[fem],
        },
        "record_b01": {
            "id": b01.id,
            "title": b01.title,
            "statement": b01.statement,
            "year": b01.year,
            "series": b01.series,
            "subjects": list(b01.subjects),
            "topics": [
                {"id": t, "heading": graph.headings[t]} for t in graph.record_topics["b01"]
            ],
        },
        "topic_listing_structural": {
            "topic": graph.lookup("structural analysis (engineering)"),
            "direct_ids": closure_records(graph.lookup("structural analysis (engineering)"))
            and sorted(graph.topic_records[graph.lookup("structural analysis (engineering)")]),
            "descendant_ids": closure_records(graph.lookup("structural analysis (engineering)")),
        },
    }
    (FIXTURES / "sci.golden.json").write_text(
        json.dumps(golden, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    write_ui_golden(graph, bibs, paths, per_topic, ranked, promising_counts, anchor)


def write_ui_golden(graph, bibs, paths, per_topic, ranked, promising_counts, math_anchor) -> None:
    """API-shaped responses for the frontend's mocked API, one per endpoint."""

    def closure_records(t: int) -> list[str]:
        return oracles.brute_closure_records(graph.children, graph.topic_records, t)

    def child_entries(topic: int) -> list[dict]:
        entries = [
            {
                "id": c,
                "heading": graph.headings[c],
                "direct_count": len(graph.topic_records[c]),
                "subtree_count": len(closure_records(c)),
                "has_children": bool(graph.children[c]),
                "copy_count": per_topic[c],
            }
            for c in graph.children[topic]
        ]
        entries.sort(key=lambda e: (-e["subtree_count"], graph.keys[e["id"]]))
        return entries

    children = {
        ",".join(str(t) for t in p): {"path": list(p), "children": child_entries(p[-1])}
        for p in paths
    }

    by_id = {b.id: b for b in bibs}

    def result_entry(rid: str, score: float) -> dict:
        b = by_id[rid]
        return {
            "id": rid,
            "score": round(score, 6),
            "title": b.title,
            "year": b.year,
            "series": b.series,
            "topics": [{"id": t, "heading": graph.headings[t]} for t in graph.record_topics[rid]],
        }

    def search_response(anchor: tuple[int, ...] | None) -> dict:
        return {
            "total": len(ranked),
            "results": [result_entry(rid, score) for rid, score in ranked[:100]],
            "promising": [
                {
                    "topic": t,
                    "heading": graph.headings[t],
                    "support": support,
                    "path": list(oracles.brute_nearest_copy(paths, t, anchor)),
                }
                for t, support in promising_counts
            ],
        }

    fem = graph.lookup("finite element method")
    structural = graph.lookup("structural analysis (engineering)")
    locate_entries = []
    for topic in (fem, structural):
        locate_entries.append(
            {
                "topic": topic,
                "anchor": None,
                "response": {
                    "topic": topic,
                    "heading": graph.headings[topic],
                    "path": list(oracles.brute_nearest_copy(paths, topic, None)),
                    "copy_count": per_topic[topic],
                },
            }
        )
        locate_entries.append(
            {
                "topic": topic,
                "anchor": list(math_anchor),
                "response": {
                    "topic": topic,
                    "heading": graph.headings[topic],
                    "path": list(oracles.brute_nearest_copy(paths, topic, tuple(math_anchor))),
                    "copy_count": per_topic[topic],
                },
            }
        )

    structural_listing = {
        "total": len(graph.topic_records[structural]),
        "results": [result_entry(rid, 0.0) for rid in sorted(graph.topic_records[structural])],
        "promising": [],
    }

    ui = {
        "children": children,
        "search": {
            "finite element": {
                "no_anchor": search_response(None),
                "math_anchor": {"anchor": list(math_anchor), "response": search_response(tuple(math_anchor))},
            }
        },
        "topic_search": {str(structural): structural_listing},
        "locate": locate_entries,
        "math_anchor": list(math_anchor),
    }
    (FIXTURES / "sci.ui.json").write_text(
        json.dumps(ui, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    auths, bibs = write_sources()
    write_marc()
    compute_goldens(auths, bibs)
    for name in sorted(p.name for p in FIXTURES.iterdir()):
        print("wrote", name)


if __name__ == "__main__":
    main()
