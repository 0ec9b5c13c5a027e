import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
REPO_ROOT = TESTS_DIR.parent
FIXTURES = REPO_ROOT / "fixtures"

sys.path.insert(0, str(TESTS_DIR))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def sci_records():
    from lcsx.ingest import parse_auth_jsonl, parse_bib_jsonl

    with open(FIXTURES / "sci.jsonl", "rb") as f:
        bibs = parse_bib_jsonl(f)
    with open(FIXTURES / "sci.auth.jsonl", "rb") as f:
        auths = parse_auth_jsonl(f)
    return auths, bibs


@pytest.fixture(scope="session")
def sci_graph(sci_records):
    from lcsx.hierarchy import build_graph

    auths, bibs = sci_records
    graph, _report = build_graph(auths, bibs)
    return graph


@pytest.fixture(scope="session")
def sci_bundle(sci_records, sci_graph):
    from lcsx.bundle import IndexBundle
    from lcsx.hierarchy import PruneParams, prune
    from lcsx.search import build_index

    auths, bibs = sci_records
    pruned, _ = prune(sci_graph, PruneParams())
    return IndexBundle(
        graph=pruned,
        index=build_index(bibs, pruned),
        bibs=bibs,
        auths=auths,
        prune_params=PruneParams(),
    )


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE_LABELS = {
    "test_c1_unfolding_oracle_equivalence": "C1 unfolding oracle equivalence",
    "test_c2_duplication_regime_sanity": "C2 duplication-regime sanity",
    "test_c3_prune_properties": "C3 prune properties",
    "test_c4_search_oracle_equivalence": "C4 search oracle equivalence",
    "test_c5_coordination_oracle_equivalence": "C5 coordination oracle equivalence",
    "test_c6_fixture_integration": "C6 fixture integration",
    "test_c7_ingest_round_trip": "C7 ingest round trip",
    "test_c8_cli_service_parity": "C8 CLI/service parity",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            name = getattr(report, "nodeid", "").rsplit("::", 1)[-1]
            base = name.split("[", 1)[0]
            if base in ACCEPTANCE_LABELS:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append(f"[{verdict}] {ACCEPTANCE_LABELS[base]}")
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(set(lines)):
            terminalreporter.write_line(line)
