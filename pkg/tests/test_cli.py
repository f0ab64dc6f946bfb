import json
import subprocess
import sys

import pytest

from fernlab import __version__
from fernlab.cache import SCHEMA_VERSION, BasisCache
from fernlab.cli import main


@pytest.fixture(autouse=True)
def cache_env(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("FERNLAB_CACHE_DIR", str(d))
    return d


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def records(doc, kind):
    return [r for r in doc["records"] if r.get("kind") == kind]


class TestOrbit:
    def test_n2_xi2(self, capsys):
        code, doc = run_json(capsys, "orbit", "--n", "2", "--xi", "2")
        assert code == 0 and doc["verdict"] == "pass"
        hs = {r["degree"]: r for r in records(doc, "homology")}
        assert hs["0"]["betti"] == "0" and hs["1"]["betti"] == "3"

    def test_n1_xi3(self, capsys):
        code, doc = run_json(capsys, "orbit", "--n", "1", "--xi", "3")
        assert code == 0
        assert {r["degree"]: r["count"] for r in records(doc, "cells")} == {"-1": "1", "0": "1"}
        assert all(r["betti"] == "0" and r["torsion"] == [] for r in records(doc, "homology"))

    def test_n3_xi1(self, capsys):
        code, doc = run_json(capsys, "orbit", "--n", "3", "--xi", "1")
        assert code == 0
        homotopy = [r for r in records(doc, "check") if r["relation"] == "dD + Dd = id"]
        assert {r["params"]["degree"]: r["verdict"] for r in homotopy} == {"-1": "pass", "0": "pass", "1": "pass"}
        assert all(r["betti"] == "0" for r in records(doc, "homology"))

    def test_top_level_schema(self, capsys):
        _, doc = run_json(capsys, "orbit", "--n", "2", "--xi", "1")
        for key in ("schema_version", "tool_version", "command", "params", "records", "verdict", "elapsed_ms"):
            assert key in doc
        assert doc["tool_version"] == __version__
        assert doc["scope"]["level"] == "model"

    def test_xi1_stated_range_is_diagnostic(self, capsys):
        code, doc = run_json(capsys, "orbit", "--n", "4", "--xi", "1")
        diag = [r for r in doc["records"] if r.get("diagnostic")]
        assert any(r["verdict"] == "fail" for r in diag)
        assert code == 0 and doc["verdict"] == "pass"


class TestBetti:
    def test_n2_xi2(self, capsys):
        code, doc = run_json(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        assert code == 0
        assert [(r["k"], r["betti"]) for r in records(doc, "betti")] == [("0", "1"), ("1", "2")]

    def test_disk(self, capsys):
        _, doc = run_json(capsys, "betti", "--n", "1", "--xi", "1", "--kmax", "1")
        assert [r["betti"] for r in records(doc, "betti")] == ["1", "0"]

    def test_n3_xi1(self, capsys):
        _, doc = run_json(capsys, "betti", "--n", "3", "--xi", "1", "--kmax", "1")
        assert records(doc, "betti")[1]["betti"] == "1"

    def test_budget_exceeded(self, capsys):
        code, doc = run_json(capsys, "betti", "--n", "4", "--xi", "3", "--budget", "100", "--no-cache")
        assert code == 1 and doc["verdict"] == "fail"
        assert records(doc, "error")[0]["error"] == "BudgetExceeded"

    def test_budget_ignores_warm_cache(self, capsys):
        assert run(capsys, "betti", "--n", "3", "--xi", "2", "--kmax", "1")[0] == 0
        code, doc = run_json(capsys, "betti", "--n", "3", "--xi", "2", "--kmax", "1", "--budget", "10")
        assert code == 1 and records(doc, "error")[0]["error"] == "BudgetExceeded"

    def test_cache_hits_noted(self, capsys):
        _, cold = run_json(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        _, warm = run_json(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        assert {r["cache_hit"] for r in records(cold, "betti")} == {False}
        assert {r["cache_hit"] for r in records(warm, "betti")} == {True}


class TestVerify:
    @pytest.mark.parametrize("argv", [
        ["verify", "dold", "--xi", "1", "--nmax", "4", "--kmax", "1"],
        ["verify", "stability", "--xi", "2", "--window", "2..4", "--kmax", "1"],
        ["verify", "transfer", "--xi", "1", "--window", "1..4", "--kmax", "0"],
        ["verify", "all", "--xi", "2", "--window", "1..3", "--kmax", "1"],
    ])
    def test_passes(self, capsys, argv):
        code, doc = run_json(capsys, *argv)
        assert code == 0 and doc["verdict"] == "pass"
        assert records(doc, "check")

    def test_transfer_scalars(self, capsys):
        _, doc = run_json(capsys, "verify", "transfer", "--xi", "1", "--window", "1..4", "--kmax", "0")
        assert [r["params"]["n"] for r in records(doc, "check")] == ["1", "2", "3", "4"]


class TestUsage:
    @pytest.mark.parametrize("argv", [
        ["orbit", "--xi", "2"],
        ["orbit", "--n", "2"],
        ["betti", "--xi", "0"],
        ["betti", "--xi", "2", "--window", "3..1"],
        ["betti", "--xi", "2", "--window", "nope"],
        ["betti", "--xi", "2", "--n", "2", "--window", "1..2"],
        ["verify", "bogus", "--xi", "1"],
        ["orbit", "--n", "2", "--xi", "2", "--format", "xml"],
        [],
    ])
    def test_exit_2(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        capsys.readouterr()


class TestFormats:
    def test_csv(self, capsys):
        code, out = run(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1", "--format", "csv")
        lines = out.strip().splitlines()
        assert code == 0 and "betti" in lines[0].split(",")
        assert len(lines) > 2

    def test_text(self, capsys):
        code, out = run(capsys, "orbit", "--n", "2", "--xi", "2", "--format", "text")
        assert code == 0 and "verdict: pass" in out and "model-level" in out


class TestCache:
    def test_clear_empty(self, capsys):
        code, doc = run_json(capsys, "cache", "clear")
        assert code == 0 and records(doc, "cleared")[0]["removed"] == "0"

    def test_stats_and_list(self, capsys, cache_env):
        run(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        _, stats = run_json(capsys, "cache", "stats")
        assert int(records(stats, "stats")[0]["invariant_basis_entries"]) >= 1
        _, listing = run_json(capsys, "cache", "list")
        entries = records(listing, "entry")
        assert entries and all(e["schema_version"] == SCHEMA_VERSION for e in entries)
        assert {e["content"] for e in entries} == {"invariant_basis"}
        _, cleared = run_json(capsys, "cache", "clear")
        assert records(cleared, "cleared")[0]["removed"] == str(len(entries))
        assert BasisCache(cache_env).entries() == []

    def test_cache_dir_flag(self, capsys, tmp_path):
        other = tmp_path / "elsewhere"
        run(capsys, "betti", "--n", "1", "--xi", "2", "--kmax", "0", "--cache-dir", str(other))
        assert [e["k"] for e in BasisCache(other).entries()] == [0]

    def test_corrupt_entry_ignored(self, capsys, cache_env):
        run(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        victim = sorted(cache_env.glob("invariants_n2_*k1.json"))[0]
        doc = json.loads(victim.read_text())
        doc["payload"]["vectors"] = []
        victim.write_text(json.dumps(doc))
        _, out = run_json(capsys, "betti", "--n", "2", "--xi", "2", "--kmax", "1")
        hit = {r["k"]: r["cache_hit"] for r in records(out, "betti")}
        assert hit == {"0": True, "1": False}
        assert records(out, "betti")[1]["betti"] == "2"

    def test_warm_equals_cold(self, capsys):
        argv = ["verify", "all", "--xi", "2", "--window", "1..3", "--kmax", "2", "--reproducible"]
        _, cold = run(capsys, *argv)
        _, warm = run(capsys, *argv)
        _, none = run(capsys, *argv, "--no-cache")
        assert cold == warm == none


class TestDeterminism:
    def test_threads(self, capsys):
        outs = set()
        for threads in ("1", "4", "8"):
            run(capsys, "cache", "clear")
            _, out = run(capsys, "verify", "all", "--xi", "2", "--window", "1..4", "--kmax", "2",
                         "--threads", threads, "--reproducible")
            outs.add(out)
        assert len(outs) == 1

    def test_module_entry_point(self, cache_env):
        proc = subprocess.run([sys.executable, "-m", "fernlab", "orbit", "--n", "2", "--xi", "2", "--reproducible"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["elapsed_ms"] == "0"
