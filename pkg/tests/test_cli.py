import json
import subprocess
import sys
from itertools import combinations

import pytest

from trisieve.cli import CountReport, bench_rows, main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def files(tmp_path):
    ones = "setfn n=3 q=1\n0: 1\n1: 1\n2: 1\n"
    out = {name: write(tmp_path / f"{name}.txt", ones) for name in "abc"}
    out["q2"] = write(tmp_path / "q2.txt", "setfn n=3 q=2\n0,1: 1\n")
    out["pairs6"] = write(tmp_path / "pairs6.txt", "family n=6 s=2\n" + "".join(f"{a},{b}\n" for a, b in combinations(range(6), 2)))
    out["empty"] = write(tmp_path / "empty.txt", "family n=6 s=2\n")
    for n in (4, 5):
        out[f"K{n}"] = write(tmp_path / f"K{n}.graph", f"graph n={n}\n" + "".join(f"{a} {b}\n" for a, b in combinations(range(n), 2)))
    out["path4"] = write(tmp_path / "path4.graph", "graph n=4\n0 1\n1 2\n2 3\n")
    out["p3"] = write(tmp_path / "p3.graph", "graph n=3\n0 1\n1 2\n")
    out["baddecomp"] = write(tmp_path / "bad.pd", "pathdecomp\n0,1\n2\n")
    out["gooddecomp"] = write(tmp_path / "good.pd", "pathdecomp\n0,1\n1,2\n")
    return out


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_triples(files, capsys):
    code, rep = run_json(capsys, ["triples", files["a"], files["b"], files["c"], "--oracle"])
    assert code == 0
    assert rep["result"]["delta"] == 6 and rep["result"]["x"] == {"1": 21, "3": 6}
    assert rep["oracle"] == 6 and rep["match"] is True and rep["schema"] == 1


def test_triples_human_output(files, capsys):
    assert main(["triples", files["a"], files["b"], files["c"], "--oracle"]) == 0
    out = capsys.readouterr().out
    assert "delta = 6" in out and "x[3] = 6" in out and "MATCH" in out and "gamma = 1/6" in out


def test_triples_shape_error(files, capsys):
    assert main(["triples", files["a"], files["b"], files["q2"]]) == 2
    assert "differs" in capsys.readouterr().err


def test_gamma_half_same_as_zero(files, capsys):
    q2 = "setfn n=7 q=2\n" + "".join(f"{a},{b}: {a * 7 + b - 20}\n" for a, b in combinations(range(7), 2))
    path = files["a"].replace("a.txt", "w.txt")
    open(path, "w").write(q2)
    deltas = set()
    for gamma in ("0", "0.5", "1/8", "auto"):
        code, rep = run_json(capsys, ["triples", path, path, path, "--gamma", gamma])
        assert code == 0
        deltas.add(rep["result"]["delta"])
    assert len(deltas) == 1


def test_bad_gamma_rejected(files):
    with pytest.raises(SystemExit) as err:
        main(["triples", files["a"], files["b"], files["c"], "--gamma", "0.7"])
    assert err.value.code == 2


def test_parse_error_names_file_and_line(tmp_path, capsys, files):
    bad = write(tmp_path / "bad.txt", "setfn n=3 q=1\n0: 1\n7: 2\n")
    assert main(["triples", files["a"], files["b"], bad]) == 2
    assert "bad.txt:3:" in capsys.readouterr().err


def test_packing(files, capsys):
    code, rep = run_json(capsys, ["packing", files["pairs6"], "--t", "3", "--oracle"])
    assert code == 0 and rep["result"] == {"ordered": 90, "unordered": 15} and rep["match"]
    code, rep = run_json(capsys, ["packing", files["empty"], "--t", "3"])
    assert rep["result"]["ordered"] == 0
    assert main(["packing", files["pairs6"], "--t", "4"]) == 2


def test_subgraph(files, capsys):
    code, rep = run_json(capsys, ["subgraph", "--pattern", "path:4", "--host", files["K5"], "--oracle"])
    assert code == 0 and rep["result"]["occurrences"] == 60 and rep["match"]
    code, rep = run_json(capsys, ["subgraph", "--pattern", "matching:2", "--host", files["K4"]])
    assert rep["result"]["occurrences"] == 3
    code, rep = run_json(capsys, ["subgraph", "--pattern", "path:5", "--host", files["path4"]])
    assert code == 0 and rep["result"]["occurrences"] == 0
    code, rep = run_json(
        capsys, ["subgraph", "--pattern-file", files["p3"], "--decomp", files["gooddecomp"], "--host", files["K4"], "--threads", "2"]
    )
    assert rep["result"]["occurrences"] == 12


def test_subgraph_invalid_decomposition(files, capsys):
    assert main(["subgraph", "--pattern-file", files["p3"], "--decomp", files["baddecomp"], "--host", files["K4"]]) == 2
    assert "edge-coverage" in capsys.readouterr().err
    assert main(["subgraph", "--pattern", "star:3", "--host", files["K4"]]) == 2
    assert main(["subgraph", "--host", files["K4"]]) == 2


def test_report_json_roundtrip():
    rep = CountReport("triples", {"delta": 6, "x": {"1": 21, "3": 6}}, "1/6", "auto", {"rhs_ops": 3}, 6, True)
    assert CountReport.from_json(rep.to_json()) == rep
    with pytest.raises(ValueError):
        CountReport.from_json(json.dumps({**json.loads(rep.to_json()), "schema": 2}))


def test_bench_rows_deterministic_delta():
    rows = list(bench_rows([8, 10], 2, ["0", "1/12", "1/6"], ["naive", "blocked"]))
    assert len(rows) == 2 * 3 * 2
    for n in (8, 10):
        assert len({r["delta"] for r in rows if r["n"] == n}) == 1
    by_gamma = {r["gamma"]: r for r in rows if r["n"] == 10 and r["backend"] == "naive"}
    assert by_gamma["0"]["rhs_ops"] > by_gamma["1/6"]["rhs_ops"]
    assert by_gamma["0"]["matmul_ops"] <= by_gamma["1/6"]["matmul_ops"]


def test_bench_csv(capsys):
    assert main(["bench", "--n", "8,10,12", "--q", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,q,gamma,backend,wall_ms,matmul_ops,rhs_ops,xdirect_ops,delta,schema"
    assert len(lines) == 1 + 3 * 3
    assert main(["bench", "--backends", "cuda"]) == 2


@pytest.mark.parametrize("seed", ["0", "7", "8"])
def test_selftest_passes(seed, capsys):
    assert main(["selftest", "--seed", seed]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


@pytest.mark.parametrize("fault,invariant", [("solve", "delta-oracle"), ("transform", "transform-oracle"), ("first-family", "first-family-identity")])
def test_selftest_detects_injected_fault(fault, invariant, capsys):
    assert main(["selftest", "--inject-fault", fault]) == 1
    out = capsys.readouterr().out
    assert f"FAIL {invariant}" in out


def test_selftest_json(capsys):
    code, rep = run_json(capsys, ["selftest", "--seed", "3"])
    assert code == 0 and all(c["passed"] for c in rep["checks"])


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "trisieve", "triples", files["a"], files["b"], files["c"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "delta = 6" in proc.stdout
