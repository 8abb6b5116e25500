import csv
import json
import subprocess
import sys

import pytest

from bspgraph.cli import main


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("1 2\n2 3\n3 4\n")
    return p


def test_run_hashmin_writes_results(tmp_path, path_file):
    out = tmp_path / "res.txt"
    assert main(["run", "hashmin", "--graph", str(path_file), "--workers", "4",
                 "--out", str(out)]) == 0
    assert out.read_text() == "1 1\n2 1\n3 1\n4 1\n"


def test_run_pagerank_auto_threshold_in_report(tmp_path):
    assert main(["gen", "powerlaw", "-n", "500", "--max-degree", "80", "--directed",
                 "--out", str(tmp_path / "g.txt")]) == 0
    rep = tmp_path / "rep.json"
    assert main(["run", "pagerank", "--graph", str(tmp_path / "g.txt"), "--epsilon", "0.01",
                 "--mirror-threshold", "auto", "--workers", "4", "--report", str(rep)]) == 0
    d = json.loads(rep.read_text())
    assert d["extra"]["mirror_threshold_label"] == "auto"
    assert d["extra"]["mirror_threshold_auto"] is True
    assert isinstance(d["mirror_threshold"], float) and d["mirror_threshold"] > 4


def test_sweep_six_rows(tmp_path):
    main(["gen", "random", "-n", "300", "--deg-avg", "6", "--directed",
          "--out", str(tmp_path / "g.txt")])
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "pagerank", "--graph", str(tmp_path / "g.txt"), "--workers", "4",
                 "--iterations", "5", "--thresholds", "1,10,100,1000,inf,auto",
                 "--csv", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["tau_label"] for r in rows] == ["1", "10", "100", "1000", "inf", "auto"]
    assert rows[-1]["cost_model"] == "1"


@pytest.mark.parametrize("alg,extra", [
    ("sv", ["--reqresp", "off"]), ("msf", []), ("sssp", ["--source", "1"]),
    ("attrbcast", ["--directed"]), ("pagerank_push", []),
])
def test_run_other_algorithms(tmp_path, alg, extra):
    g = tmp_path / "w.txt"
    g.write_text("1 2 1.5\n2 3 0.5\n3 1 2.0\n4\n")
    weighted = ["--weighted"] if alg in ("sssp", "msf") else []
    if not weighted:
        g.write_text("1 2\n2 3\n3 1\n4\n")
    out = tmp_path / "o.txt"
    assert main(["run", alg, "--graph", str(g), "--workers", "2", "--out", str(out),
                 *weighted, *extra]) == 0
    assert len(out.read_text().splitlines()) == 4


def test_pair_ids(tmp_path):
    g = tmp_path / "p.txt"
    g.write_text("0:1 2:3\n2:3 4:5\n")
    out = tmp_path / "o.txt"
    assert main(["run", "hashmin", "--graph", str(g), "--id-type", "pair", "--workers", "3",
                 "--out", str(out)]) == 0
    assert out.read_text() == "0:1 0:1\n2:3 0:1\n4:5 0:1\n"


@pytest.mark.parametrize("argv", [
    ["run", "hashmin"],
    ["run", "nosuch", "--graph", "x"],
    ["run", "hashmin", "--graph", "x", "--workers", "0"],
    ["run", "hashmin", "--graph", "x", "--mirror-threshold", "-2"],
    ["run", "hashmin", "--graph", "x", "--combiner", "maybe"],
])
def test_bad_flags_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as ei:
        main(argv)
    assert ei.value.code == 2


def test_runtime_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\nfoo\n")
    assert main(["run", "hashmin", "--graph", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["run", "hashmin", "--graph", str(tmp_path / "missing.txt")]) == 1
    g = tmp_path / "g.txt"
    g.write_text("1 2 1\n")
    assert main(["run", "sssp", "--graph", str(g), "--source", "9"]) == 1


def test_results_are_byte_identical(tmp_path):
    main(["gen", "random", "-n", "400", "--deg-avg", "5", "--seed", "3",
          "--out", str(tmp_path / "g.txt")])
    outs = []
    for i in range(2):
        o, r = tmp_path / f"o{i}.txt", tmp_path / f"r{i}.json"
        main(["run", "sv", "--graph", str(tmp_path / "g.txt"), "--workers", "4", "--seed", "9",
              "--mirror-threshold", "5", "--out", str(o), "--report", str(r)])
        outs.append((o.read_bytes(), r.read_bytes()))
    assert outs[0] == outs[1]


def test_console_module_entry(tmp_path, path_file):
    proc = subprocess.run([sys.executable, "-m", "bspgraph.cli", "run", "hashmin",
                           "--graph", str(path_file)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["components"] == 1
