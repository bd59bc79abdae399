from __future__ import annotations

import csv
import json
import subprocess
import sys

from osplpp.cli import CACHE_VERSION, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_writes_header_and_records(tmp_path, capsys):
    out = tmp_path / "syt4.txt"
    code, stdout, _ = run(capsys, "enumerate", "syt", "--n", "4", "--out", str(out))
    assert code == 0 and "count 16" in stdout
    lines = out.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["count"] == 16 == len(lines) - 1 and header["version"] == CACHE_VERSION
    assert lines[1] == "3,2,1:1,2,3,4,5,6"


def test_enumerate_cache_is_verified_and_rebuilt(tmp_path, capsys):
    code, stdout, _ = run(capsys, "enumerate", "networks", "--n", "3", "--cache-dir", str(tmp_path))
    assert code == 0 and "count 2" in stdout
    path = next(tmp_path.iterdir())
    code, stdout, _ = run(capsys, "enumerate", "networks", "--n", "3", "--cache-dir", str(tmp_path))
    assert "cached, verified" in stdout
    # a stale version forces re-enumeration
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    header["version"] = CACHE_VERSION + 1
    path.write_text("\n".join([json.dumps(header)] + lines[1:]) + "\n")
    code, stdout, _ = run(capsys, "enumerate", "networks", "--n", "3", "--cache-dir", str(tmp_path))
    assert code == 0 and "cached" not in stdout
    assert json.loads(path.read_text().splitlines()[0])["version"] == CACHE_VERSION


def test_enumerate_trivial_order():
    assert main(["enumerate", "syt", "--n", "2"]) == 0


def test_verify_identity_with_component(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "verify", "identity", "--n", "4", "--show-component", "--out", str(out))
    assert code == 0
    assert "(2*x2 + x1 + 5) / ((x1+1)*(x1+2)^2*(x1+3)*(x2+1)*(x2+2)*(x3+1))" in stdout
    record = json.loads(out.read_text())
    assert record["verdict"] == "EQUAL"
    assert record["run_config"]["n"] == 4 and record["run_config"]["method"] == "canonical"


def test_verify_eg_and_bernoulli(capsys):
    assert run(capsys, "verify", "eg", "--n", "5")[0] == 0
    code, stdout, _ = run(capsys, "verify", "thm22", "--bernoulli", "--shape", "2,2")
    assert code == 0 and "EXPECTED-INEQUAL" in stdout
    assert run(capsys, "verify", "thm22", "--shape", "2,2")[0] == 0
    assert run(capsys, "verify", "rsk-burge", "--box", "2", "--cap", "1")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys, "verify", "eg", "--n", "9")[0] == 2
    assert run(capsys, "simulate", "osp", "--n", "13", "--replicas", "5")[0] == 2
    assert run(capsys, "simulate", "osp", "--n", "4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "thm22", "--shape", "1,2")[0] == 2


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_simulate_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(capsys, "simulate", "osp", "--n", "2", "--replicas", "10", "--seed", "3", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rows = _rows(a)
    assert rows[0] == ["replica", "U1", "Umax"] and len(rows) == 11
    assert all(r[1] == "%.17g" % float(r[1]) for r in rows[1:])


def test_simulate_growth_and_lpp_columns(tmp_path, capsys):
    g = tmp_path / "g.csv"
    run(capsys, "simulate", "growth", "--n", "6", "--replicas", "4", "--out", str(g))
    assert _rows(g)[0] == ["replica", "V1", "V2", "V3", "V4", "V5", "Vmax"]
    lpp = tmp_path / "lpp.csv"
    run(capsys, "simulate", "lpp", "--n", "8", "--replicas", "4", "--out", str(lpp))
    header = _rows(lpp)[0]
    assert header[1:9] == [f"V{k}" for k in range(1, 8)] + ["Vmax"]
    assert header[9:] == [f"W{k}" for k in range(1, 8)] + ["Wmax"]


def test_compare_self_and_schema_mismatch(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "simulate", "osp", "--n", "4", "--replicas", "300", "--out", str(a))
    run(capsys, "simulate", "growth", "--n", "5", "--replicas", "300", "--out", str(b))
    report = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "compare", str(a), str(a), "--functionals", "max,sum,1+2*3", "--out", str(report))
    assert code == 0
    stats = json.loads(report.read_text())["statistics"]
    assert all(v == 0 for k, v in stats.items() if k.endswith("_D"))
    assert run(capsys, "compare", str(a), str(b))[0] == 2


def test_compare_v_against_w(tmp_path, capsys):
    lpp = tmp_path / "lpp.csv"
    run(capsys, "simulate", "lpp", "--n", "5", "--replicas", "2000", "--seed", "9", "--out", str(lpp))
    assert run(capsys, "compare", str(lpp), str(lpp))[0] == 2  # ambiguous without prefixes
    code, stdout, _ = run(capsys, "compare", str(lpp), str(lpp), "--lhs-prefix", "V", "--rhs-prefix", "W")
    assert code == 0 and "compare V vs W" in stdout


def test_compare_failure_dumps_cases(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "simulate", "osp", "--n", "3", "--replicas", "500", "--out", str(a))
    with open(b, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["replica", "U1", "U2", "Umax"])
        for r in range(500):
            w.writerow([r, 50 + r, 60 + r, 60 + r])
    code, _, err = run(capsys, "compare", str(a), str(b))
    assert code == 1 and "failing_cases" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "osplpp", "enumerate", "syt", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "count 2" in proc.stdout
