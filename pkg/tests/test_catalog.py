import json
from pathlib import Path

import pytest

from conftest import cycles, graph, k44
from evenlines.arrangement import canonical_form, decode_graph6, degree_profile
from evenlines.catalog import (
    ARGUMENT_TAGS,
    ExclusionEntry,
    builtin_catalog,
    catalog_entry,
    catalog_json,
    classify_graphs,
    classify_survivors,
    derive_lambda11_subcases,
    ledger_json,
    load_ledger,
    match,
    matches,
    shared_classes,
)
from evenlines.filters import run_pipeline

SOURCE = Path(__file__).resolve().parent.parent / "paper.md"


def test_entry_ids_and_k():
    ids = [e.id for e in builtin_catalog()]
    assert len(ids) == 16 and len(set(ids)) == 16
    assert catalog_entry("Λ(6)").graphs[0].k == 6
    e = catalog_entry("Λ_4(8)")
    assert set(e.graphs[0].degrees) == {4} and e.k == 16
    p = degree_profile(catalog_entry("Λ_10(10)").graphs[0])
    assert p.type_vector == {0: 1, 4: 9} and p.k == 18
    ten = [e.k for e in builtin_catalog() if e.n == 10]
    assert ten == [6, 10, 10, 10, 14, 14, 14, 14, 14, 18, 18]


def test_small_entries_have_expected_shapes():
    assert match(cycles(3, 3)) == "Λ(6)"
    assert match(graph(8, [])) == "Λ_1(8)"
    assert match(cycles(4, 4)) == "Λ_2(8)"
    assert match(k44()) == "Λ_3(8)"
    assert match(cycles(6, isolated=4)) == "Λ_1(10)"
    assert match(cycles(5, 5)) == "Λ_2(10)"
    assert match(graph(4, [(0, 1), (1, 2), (2, 3)])) is None


def test_lambda4_8_is_two_quadrangles_joined_by_matching():
    k4 = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    edges = k4 + [(i + 4, j + 4) for i, j in k4] + [(i, i + 4) for i in range(4)]
    assert match(graph(8, edges)) == "Λ_4(8)"


def test_lambda11_subcases():
    subs = derive_lambda11_subcases()
    assert len(subs) == 3
    assert len({canonical_form(a) for a in subs}) == 3
    for a in subs:
        assert degree_profile(a).type_vector == {0: 1, 4: 9}
        assert run_pipeline(a).overall


def test_lambda10_coincides_with_a_lambda11_subcase():
    """The K_{3,3} description and the three-triangle description overlap in one class."""
    shared = shared_classes()
    assert list(shared.values()) == [("Λ_10(10)", "Λ_11(10)")]
    a = catalog_entry("Λ_10(10)").graphs[0]
    assert matches(a) == ("Λ_10(10)", "Λ_11(10)")
    assert match(a) == "Λ_10(10)"


def test_catalog_json_status():
    data = catalog_json()
    assert all(e["status"] == "candidate" for e in data["entries"] if e["n"] == 10)
    assert all(e["status"] == "classified" for e in data["entries"] if e["n"] < 10)
    gap = [e["id"] for e in data["entries"] if e["certificate"].get("gap")]
    assert gap == ["Λ_10(10)"]


def test_classify_n6():
    from evenlines.enumerator import EnumerationTask, enumerate_survivors

    c = classify_survivors(enumerate_survivors(EnumerationTask.for_n(6)))
    assert c.matched_ids == {"Λ(6)"} and not c.excluded and not c.unknown


def test_classify_n8(survivors8):
    c = classify_survivors(survivors8, load_ledger())
    assert c.matched_ids == {"Λ_1(8)", "Λ_2(8)", "Λ_3(8)", "Λ_4(8)"}
    assert len(c.excluded) == 2 and not c.unknown
    for g6, e in c.excluded.items():
        assert e.stratum == (8, 8) and e.section == "5.4" and e.quote.endswith("Contradiction!")
        a = decode_graph6(g6)
        # figure eight: one 4-line on two cycles of 2-lines, plus an isolated line
        assert degree_profile(a).type_vector == {0: 1, 2: 6, 4: 1}


def test_classify_n10(survivors10):
    c = classify_survivors(survivors10, load_ledger())
    assert not c.unknown
    assert c.matched_ids == {e.id for e in builtin_catalog() if e.n == 10}
    assert all(e.section == "5.5" for e in c.excluded.values())
    assert len(c.excluded) + sum(1 for s in survivors10.survivors if match(decode_graph6(s.graph6))) == len(survivors10)


def test_unknown_reported_without_ledger(survivors8):
    c = classify_survivors(survivors8, [])
    assert len(c.unknown) == 2 and not c.validated


def test_ledger_entries_well_formed():
    ledger = load_ledger()
    assert len({e.graph6 for e in ledger}) == len(ledger)
    for e in ledger:
        assert e.argument_tag in ARGUMENT_TAGS
        assert e.quote and e.note
        assert canonical_form(decode_graph6(e.graph6)).decode() == e.graph6
        assert match(decode_graph6(e.graph6)) is None
    round_trip = [ExclusionEntry.from_json(x) for x in ledger_json(ledger)["entries"]]
    assert round_trip == ledger


@pytest.mark.skipif(not SOURCE.exists(), reason="source text not available")
def test_quotes_are_verbatim():
    # source line breaks are not part of a quote
    def flat(s):
        return " ".join(s.split())

    text = flat(SOURCE.read_text(encoding="utf-8"))
    for e in load_ledger():
        assert flat(e.quote) in text, e.quote
    for e in builtin_catalog():
        assert flat(e.certificate.quote) in text, e.id
    data = json.loads((Path(__file__).parent.parent / "src/evenlines/data/citations.json").read_text("utf-8"))
    for rule, c in data.items():
        assert flat(c["quote"]) in text, rule


def test_ledger_is_reproducible():
    import subprocess
    import sys

    root = Path(__file__).resolve().parent.parent
    out = subprocess.run([sys.executable, str(root / "tools" / "build_ledger.py"), "--check"],
                         capture_output=True, text=True, cwd=root)
    assert out.returncode == 0, out.stdout + out.stderr


def test_classify_graphs_direct():
    c = classify_graphs([cycles(5, 5), graph(4, [(0, 1)])], [])
    assert c.matched_ids == {"Λ_2(10)"} and len(c.unknown) == 1
    assert c.to_json()["counts"] == {"matched": 1, "excluded": 0, "unknown": 1}
