import json
import subprocess
import sys

import pytest

from evenlines.cli import cache_key, main


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("EVENLINES_CACHE", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_n6(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--n", "6", "--out", str(tmp_path / "o"))
    assert code == 0
    summary = json.loads(out)
    assert summary["n"] == 6 and summary["classes"] == 1
    files = sorted(p.name for p in (tmp_path / "o").iterdir())
    assert files == ["survivors_n6.g6", "survivors_n6.json", "survivors_n6.manifest.json"]
    manifest = json.loads((tmp_path / "o" / "survivors_n6.manifest.json").read_text())
    assert manifest["command"] == "enumerate" and manifest["complete"] is True
    assert manifest["tool_version"] and manifest["outputs"]


def test_enumerate_cache_reuse_is_byte_identical(capsys, tmp_path):
    _, first, _ = run(capsys, "enumerate", "--n", "8", "--out", str(tmp_path / "a"))
    _, second, _ = run(capsys, "enumerate", "--n", "8", "--out", str(tmp_path / "b"))
    assert first == second
    assert (tmp_path / "a" / "survivors_n8.g6").read_bytes() == (tmp_path / "b" / "survivors_n8.g6").read_bytes()
    m = json.loads((tmp_path / "b" / "survivors_n8.manifest.json").read_text())
    assert m["cache_hit"] is True
    _, third, _ = run(capsys, "enumerate", "--n", "8", "--no-cache")
    assert third == first


def test_cache_key_depends_on_params():
    assert cache_key("enumerate", {"n": 8}) != cache_key("enumerate", {"n": 10})
    assert cache_key("enumerate", {"n": 8}) == cache_key("enumerate", {"n": 8})


def test_enumerate_budget_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--n", "10", "--budget", "20", "--no-cache", "--out", str(tmp_path))
    assert code == 3 and "budget" in err
    m = json.loads((tmp_path / "survivors_n10.manifest.json").read_text())
    assert m["complete"] is False


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "enumerate", "--n", "6", "--bogus")[0] == 2
    assert run(capsys, "check")[0] == 2


def test_check_catalog_export(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "export", "--format", "g6")
    assert code == 0
    f = tmp_path / "cat.g6"
    f.write_text(out)
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0
    records = [json.loads(l) for l in out.splitlines()]
    # 18 catalog graphs, one class shared by two entries
    assert len(records) == 17 and all(r["overall"] == "pass" for r in records)


def test_check_failures_and_malformed(capsys, tmp_path):
    f = tmp_path / "x.g6"
    f.write_text("EJaG\nEhEG\nnot graph6!\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1
    records = [json.loads(l) for l in out.splitlines()]
    assert records[0]["overall"] == "pass" and records[1]["overall"] == "fail"
    assert records[2]["line"] == 3 and "error" in records[2]


def test_classify(capsys, tmp_path):
    run(capsys, "enumerate", "--n", "10", "--out", str(tmp_path))
    code, out, _ = run(capsys, "classify", str(tmp_path / "survivors_n10.g6"))
    assert code == 0
    d = json.loads(out)
    assert d["counts"]["unknown"] == 0 and d["counts"]["excluded"] == 101
    empty = tmp_path / "empty_ledger.json"
    empty.write_text('{"version": 1, "entries": []}')
    code, out, _ = run(capsys, "classify", str(tmp_path / "survivors_n10.g6"), "--ledger", str(empty))
    assert code == 1 and json.loads(out)["counts"]["unknown"] == 101


def test_chern_json_and_table(capsys, tmp_path):
    f = tmp_path / "a.g6"
    f.write_text("EJaG\n")
    code, out, _ = run(capsys, "chern", str(f))
    r = json.loads(out)
    assert code == 0 and (r["c1sq_Y"], r["c2_Y"], r["chi_OY"]) == (0, 48, 4)
    code, out, _ = run(capsys, "chern", str(f), "--table")
    assert code == 0 and out.splitlines()[0].split()[:3] == ["graph6", "n", "k"]


def test_catalog_list_and_export(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and len(out.splitlines()) == 16
    code, out, _ = run(capsys, "catalog", "export")
    d = json.loads(out)
    assert len(d["catalog"]["entries"]) == 16 and len(d["ledger"]["entries"]) == 103


def test_code_command(capsys, tmp_path):
    from pathlib import Path

    gens = Path(__file__).parent / "data" / "rm14_generators.txt"
    code, out, _ = run(capsys, "code", "--generators", str(gens))
    assert code == 0
    assert json.loads(out) == {"dimension": 5, "length": 16, "weights": {"0": 1, "8": 30, "16": 1}}
    bad = tmp_path / "bad.txt"
    bad.write_text("1100\n1100\n")
    code, out, _ = run(capsys, "code", "--generators", str(bad))
    assert code == 1 and "error" in json.loads(out)


def test_json_output_is_byte_identical(capsys, tmp_path):
    f = tmp_path / "a.g6"
    f.write_text("EJaG\nG?????\n")
    outs = {run(capsys, "check", str(f))[1] for _ in range(3)}
    assert len(outs) == 1


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "evenlines.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "evenlines" in out.stdout
