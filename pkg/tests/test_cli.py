import csv
import io
import json
import shlex

import pytest
from click.testing import CliRunner

from quadchroma import cli
from quadchroma.cli import RunReport, main
from quadchroma.lattice import InvariantViolation

from conftest import GOLDEN


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), prog_name="quadchroma", env=env)


def report(*args, env=None):
    res = run(*args, env=env)
    assert res.exit_code == 0, res.output
    return json.loads(res.stdout)


def test_exact_box_unit():
    r = report("exact-box", "--w", "1", "--h", "1")
    assert r["results"]["a_total"] == "0"
    assert r["results"]["convex_total"] == "1"
    assert r["command"].startswith("quadchroma exact-box")


def test_exact_box_breakdown_sums():
    res = report("exact-box", "--w", "8", "--h", "8", "--breakdown")["results"]
    parts = [int(v) for v in res["a_by_corners"]]
    assert sum(parts) == int(res["a_total"])
    assert parts[2] == sum(int(res[k]) for k in ("c2", "d2", "c2_anti", "d2_anti", "s2"))


def test_exact_box_ie_equals_direct():
    direct = report("exact-box", "--w", "3", "--h", "2")["results"]["a_total"]
    ie = report("exact-box", "--w", "3", "--h", "2", "--method", "ie", "--breakdown")["results"]
    assert ie["a_total"] == direct == "33"


@pytest.mark.parametrize("m, total, convex, mono", [(1, "1", "1", "0"), (2, "126", "70", "15")])
def test_exact_grid(m, total, convex, mono):
    res = report("exact-grid", "--m", str(m))["results"]
    assert (res["total_quadruples"], res["convex"], res["mono"]) == (total, convex, mono)
    per_box = report("exact-grid", "--m", str(m), "--method", "per-box")["results"]
    assert per_box["mono"] == mono


def test_mc_golden():
    golden = json.loads((GOLDEN / "mc_seed42_1e6.json").read_text())
    r = report("mc", "--samples", "1000000", "--seed", "42")
    assert r["results"] == golden["results"]
    assert r["command"] == golden["command"]


def test_mc_all_blue_rule():
    res = report("mc", "--samples", "20000", "--rule", "blue=(-inf,inf)")["results"]
    assert res["p_mono"]["p_hat"] == res["p_convex"]["p_hat"]


def test_mc_graph_with_oracle():
    res = report("mc", "--samples", "1000", "--n-points", "6", "--trials", "5", "--oracle")["results"]
    assert res["graph"]["oracle_checked"] == 5


def test_rerun_echoed_command_reproduces():
    first = report("mc", "--samples", "5000", "--seed", "3", "--rule", "blue=(-1,1)")
    argv = shlex.split(first["command"])[1:]
    second = report(*argv)
    assert second["results"] == first["results"]
    assert second["parameters"] == first["parameters"]


def test_report_json_round_trip():
    text = run("exact-box", "--w", "2", "--h", "2").stdout
    rep = RunReport.from_json(text)
    assert json.loads(rep.to_json()) == json.loads(text)


def test_threads_env_var():
    r = report("mc", "--samples", "1000", env={"QUADCHROMA_THREADS": "3"})
    assert r["workers"] == 3
    assert report("mc", "--samples", "1000", "--threads", "2")["workers"] == 2


def test_sweep_single_rule_csv():
    rows = list(csv.DictReader(io.StringIO(run("sweep", "--samples", "5000").stdout)))
    assert len(rows) == 1
    assert list(rows[0]) == cli.SWEEP_COLUMNS
    assert float(rows[0]["delta_vs_baseline"]) == 0


def test_sweep_rules_and_out(tmp_path):
    out = tmp_path / "sweep.json"
    res = run("sweep", "--samples", "5000", "--rule", "blue=(-1,1)", "--format", "json", "--out", str(out))
    assert res.exit_code == 0 and res.stdout == ""
    rows = json.loads(out.read_text())["results"]["rows"]
    assert [r["rule"] for r in rows] == ["blue=[-inf,0] vertical=blue", "blue=(-1,1) vertical=blue"]


def test_sweep_grid():
    rows = list(csv.DictReader(io.StringIO(run("sweep", "--samples", "2000", "--grid", "-1:1:3").stdout)))
    assert [r["rule"] for r in rows][1:] == [
        "blue=[-inf,-1] vertical=blue", "blue=[-inf,0] vertical=blue", "blue=[-inf,1] vertical=blue"]
    assert float(rows[2]["delta_vs_baseline"]) == 0


def test_sweep_rules_file(tmp_path):
    f = tmp_path / "rules.txt"
    f.write_text("# baseline first\nblue=[-inf,0]\nblue=(-1,1)  # wider\n\nred=[0,inf]\n")
    rows = list(csv.DictReader(io.StringIO(run("sweep", "--samples", "3000", "--rules-file", str(f)).stdout)))
    assert len(rows) == 3
    assert float(rows[2]["delta_vs_baseline"]) == 0  # complement of the baseline


def test_sweep_rules_file_diagnostics(tmp_path):
    f = tmp_path / "rules.txt"
    f.write_text("blue=[-inf,0]\nblue=(1,0)\n")
    res = run("sweep", "--rules-file", str(f))
    assert res.exit_code == 2
    assert f"{f}:2:" in res.stderr


@pytest.mark.parametrize("args", [
    ["exact-box", "--w", "0", "--h", "1"],
    ["exact-box", "--w", "2"],
    ["exact-grid", "--m", "3", "--method", "bogus"],
    ["mc", "--rule", "blue=(1,0)"],
    ["sweep", "--grid", "a:b:c"],
    ["nope"],
])
def test_usage_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_guard_exit_3():
    assert run("exact-box", "--w", "40", "--h", "40").exit_code == 3
    assert run("exact-grid", "--m", "40").exit_code == 3
    # under the point guard but above the cost threshold
    res = run("exact-box", "--w", "33", "--h", "33")
    assert res.exit_code == 3 and "--yes" in res.stderr


def test_invariant_exit_4(monkeypatch):
    def broken(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "count_box", broken)
    res = run("exact-box", "--w", "2", "--h", "2")
    assert res.exit_code == 4
    assert "invariant" in res.stderr
