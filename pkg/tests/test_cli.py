import io
import json
import subprocess
import sys

import pytest

from monokit import cli


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    rc = cli.run(list(argv), stdout=out, stderr=err)
    return rc, out.getvalue(), err.getvalue()


def call_json(*argv):
    rc, out, _ = call("--format", "json", *argv)
    return rc, json.loads(out)


@pytest.mark.parametrize("argv,text", [
    (("rootsys", "cartan", "--rs", "A2"), "  2  -1\n -1   2\n"),
    (("rep", "dim", "--rs", "E6", "--weight", "1,0,0,0,0,0"), "27\n"),
    (("rep", "tensor", "--rs", "A2", "--weight", "1,0", "--mu", "0,1"), "(0,0): 1\n(1,1): 1\n"),
    (("padic", "vp", "--x", "50/3", "--p", "5"), "2\n"),
    (("bundle", "invariants", "--spec", "example-beispi"), "r = 2, c1 = 0, mu = 0, c2 = 3, discriminant = 12\n"),
])
def test_text_output(argv, text):
    rc, out, _ = call(*argv)
    assert rc == 0 and out == text


SMOKE = [
    ("rootsys", "posroots", "--rs", "G2"),
    ("rootsys", "pi0", "--rs", "D4"),
    ("rootsys", "dual", "--rs", "E6", "--weight", "1,0,0,0,0,0"),
    ("rep", "mults", "--rs", "B2", "--weight", "1,1", "--all-weights"),
    ("rep", "tensor", "--rs", "G2", "--weight", "1,0", "--mu", "1,0", "--oracle"),
    ("rep", "invariants", "--rs", "A1", "--weights", "1", "1", "2"),
    ("rep", "min-inv-power", "--rs", "A2", "--weight", "1,0"),
    ("rep", "contains", "--rs", "A2", "--weight", "1,0", "--n", "3", "--mu", "0,0"),
    ("rep", "verify-gewicht", "--rs", "B3", "--weight", "1,0,1", "--index", "3"),
    ("rep", "verify-kompo", "--rs", "D5", "--weight", "0,0,0,1,0"),
    ("rep", "selfdual-search", "--rs", "A3", "--weight", "1,0,0"),
    ("rep", "enumerate", "--rs", "A2", "--dim-bound", "10", "--non-self-dual"),
    ("rep", "conjecture", "--rs", "A2", "--weight", "1,0", "--mu", "0,0"),
    ("padic", "newton", "--coeffs", "27,-3,1", "--p", "3"),
    ("padic", "cyclotomic", "--p", "3", "--l", "3", "--n", "2"),
    ("padic", "eigbound", "--matrix", '[["3","0"],["0","9/2"]]', "--p", "3"),
    ("padic", "certify", "--generators", '[[[1,3],[0,1]]]', "--p", "3", "--q", "1"),
    ("padic", "larsen", "--r", "2", "--dim-endend", "2", "--det-finite"),
    ("padic", "almost-simple", "--r", "3", "--dim-inv", "1"),
    ("padic", "growth", "--sizes", "1,9,81,729", "--p", "3"),
    ("bundle", "chern", "--spec", '{"n":2,"form":"kernel","a":[1,1,1],"b":[3]}'),
    ("bundle", "bs-stable", "--spec", "example-beispi", "--dual"),
    ("bundle", "vanishing", "--spec", '{"n":3,"form":"cokernel","a":[-4],"b":[-1,-1,-1,-1]}'),
    ("bundle", "langer", "--rank", "3", "--disc", "18"),
    ("bundle", "langer", "--spec", "example-beispi"),
    ("bundle", "analyze", "--spec", "example-beispi", "--p", "3", "--q", "1", "--trivial-mod-pq"),
    ("paper", "beispi"),
]


@pytest.mark.parametrize("argv", SMOKE, ids=lambda a: " ".join(a[:2]))
def test_every_command_runs_in_both_formats(argv):
    rc, out, _ = call(*argv)
    assert rc == 0 and out.strip()
    rc, doc = call_json(*argv)
    assert rc == 0
    assert doc["schema_version"] == cli.SCHEMA_VERSION == 1
    assert doc["command"] == " ".join(argv[:2]) and doc["ok"] is True
    # deterministic and key-sorted
    _, again, _ = call("--format", "json", *argv)
    assert json.loads(again) == doc
    assert again.strip() == json.dumps(doc, sort_keys=True)


def test_json_payload_values():
    assert call_json("rootsys", "dual", "--rs", "E6", "--weight", "1,0,0,0,0,0")[1]["result"]
    _, doc = call_json("bundle", "langer", "--rank", "3", "--disc", "18")
    assert doc["result"]["a_min"] == 13 and doc["result"]["bound"] == "73/6"
    _, doc = call_json("rep", "conjecture", "--rs", "A2", "--weight", "1,0", "--mu", "0,0")
    assert "3" in json.dumps(doc["result"])


def test_format_flag_after_leaf():
    rc, out, _ = call("rep", "dim", "--rs", "A2", "--weight", "1,1", "--format", "json")
    assert rc == 0 and json.loads(out)["result"]["dimension"] == 8


def test_format_from_environment(monkeypatch):
    monkeypatch.setenv(cli.FORMAT_ENV, "json")
    rc, out, _ = call("rep", "dim", "--rs", "A2", "--weight", "1,1")
    assert json.loads(out)["result"]["dimension"] == 8
    rc, out, _ = call("--format", "text", "rep", "dim", "--rs", "A2", "--weight", "1,1")
    assert out == "8\n"
    monkeypatch.setenv(cli.FORMAT_ENV, "yaml")
    rc, _, err = call("rep", "dim", "--rs", "A2", "--weight", "1,1")
    assert rc == 2 and cli.FORMAT_ENV in err


@pytest.mark.parametrize("argv", [
    ("rep", "dim", "--rs", "A2", "--weight", "1,x"),
    ("rep", "dim", "--rs", "Q7", "--weight", "1"),
    ("rep", "verify-gewicht", "--rs", "A2", "--weight", "1,0", "--index", "0"),
    ("padic", "vp", "--x", "one", "--p", "3"),
    ("bundle", "chern", "--spec", "{not json"),
    ("bundle", "chern", "--spec", '{"n":2,"a":[1],"b":[1]}'),
    ("rep", "dim"),
    ("nosuchgroup",),
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


@pytest.mark.parametrize("argv", [
    ("rep", "dim", "--rs", "A2", "--weight", "1,-1"),
    ("rep", "dim", "--rs", "A2", "--weight", "1,0,0"),
    ("padic", "vp", "--x", "3", "--p", "4"),
    ("padic", "cyclotomic", "--p", "3", "--l", "3", "--n", "0"),
    ("bundle", "langer", "--spec", '{"n":1,"a":[0,0,0],"b":[1]}'),
])
def test_domain_errors_exit_1(argv):
    rc, out, err = call(*argv)
    assert rc == 1 and err.startswith("monokit: ")
    rc, doc = call_json(*argv)
    assert rc == 1 and doc["ok"] is False and doc["error"]


def test_spec_from_file(tmp_path):
    f = tmp_path / "spec.json"
    f.write_text(json.dumps({"n": 2, "form": "kernel", "a": [1, 1, 1], "b": [3]}))
    assert call("bundle", "invariants", "--spec", f"@{f}")[1].startswith("r = 2")
    assert call("bundle", "invariants", "--spec", f"@{tmp_path / 'missing.json'}")[0] == 2


def test_canned_syzygy_run_ends_with_group():
    rc, out, _ = call("paper", "beispi")
    assert rc == 0 and out.strip().splitlines()[-1] == "G = SL(2)"
    rc, out, _ = call("paper", "beispi", "--q", "1/2")
    assert rc == 0 and "G =" not in out and "withheld" in out


def test_paper_e6_table():
    rc, doc = call_json("paper", "e6-table")
    assert rc == 0 and len(doc["result"]["families"]) == 10


def test_sweep_budget_reports_partial():
    rc, doc = call_json("paper", "dl-exclusion", "--max-seconds", "0")
    assert rc == 1 and doc["ok"] is False and doc["result"]["complete"] is False
    rc, out, _ = call("paper", "invar-sweep", "--max-seconds", "0")
    assert rc == 1 and "interrupted (partial)" in out
    rc, doc = call_json("paper", "dl-exclusion")
    assert rc == 0 and doc["result"]["checked"] == 16 and not doc["result"]["failures"]


def test_small_sweeps_complete():
    rc, doc = call_json("paper", "invar-sweep", "--max-dim", "6")
    assert rc == 0 and doc["result"]["complete"]
    rc, out, _ = call("paper", "conjecture-sweep", "--max-label", "1")
    assert rc == 0 and "pairs need n above the bound" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monokit.cli", "rep", "dim", "--rs", "G2", "--weight", "1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7\n"
    proc = subprocess.run([sys.executable, "-m", "monokit.cli", "rep", "dim", "--rs", "G2", "--weight", "z"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
