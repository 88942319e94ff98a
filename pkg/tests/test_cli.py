import json
import subprocess
import sys

import pytest

from srglab.asymptotics import CSV_HEADER
from srglab.cli import main
from srglab.graph import read_edgelist


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_paley(tmp_path, capsys):
    path = tmp_path / "p13.txt"
    code, out, _ = run(["gen", "paley:13", "--out", str(path)], capsys)
    assert code == 0 and out == "SR(13,6,2,3)\n"
    g = read_edgelist(path)
    assert g.n == 13 and g.num_edges == 39
    assert path.read_text().splitlines()[0] == "13 39"


def test_gen_petersen_and_verify(tmp_path, capsys):
    path = tmp_path / "petersen.txt"
    code, out, _ = run(["gen", "~triangular:5", "--out", str(path)], capsys)
    assert code == 0 and out.strip() == "SR(10,3,0,1)"
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0 and out.strip() == "SR(10,3,0,1)"


def test_gen_bad_spec(capsys):
    code, _, err = run(["gen", "paley:12"], capsys)
    assert code == 2 and "paley:Q" in err


def test_verify_path_graph(tmp_path, capsys):
    path = tmp_path / "path.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 1 and out.strip() == "NotRegular vertex=0"


def test_verify_truncated(tmp_path, capsys):
    path = tmp_path / "trunc.txt"
    path.write_text("10 15\n0 1\n0 4\n")
    code, _, err = run(["verify", str(path)], capsys)
    assert code == 2 and "line 4" in err and "parse error" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, err = run(["verify", str(tmp_path / "nope.txt")], capsys)
    assert code == 2 and "I/O error" in err


def test_sweep_empty(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    code, _, _ = run(["sweep", "paley", "--out", str(path)], capsys)
    assert code == 0 and path.read_text() == ",".join(CSV_HEADER) + "\n"


def test_sweep_paley_upto(tmp_path, capsys):
    path = tmp_path / "paley.csv"
    code, _, _ = run(["sweep", "paley", "--upto", "200", "--out", str(path)], capsys)
    assert code == 0
    rows = [line.split(",") for line in path.read_text().splitlines()[1:]]
    assert [int(r[2]) for r in rows][:4] == [5, 13, 17, 29]
    devs = [float(r[9]) for r in rows]
    assert devs == sorted(devs, reverse=True)


def test_sweep_triangular_bound(capsys):
    code, out, _ = run(["sweep", "triangular", "10", "20", "40"], capsys)
    assert code == 0
    for line, m in zip(out.splitlines()[1:], [10, 20, 40]):
        assert float(line.split(",")[9]) <= 3 / (m - 1)


def test_sweep_bad_size(capsys):
    code, _, err = run(["sweep", "paley", "15"], capsys)
    assert code == 2


def test_lemma_xsec2(capsys):
    code, out, _ = run(["lemma", "xsec2", "random:120x120:0.5", "--eps", "0.15", "--r", "2",
                        "--seed", "7"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "holds" and doc["seed"] == 7
    assert [r["lemma"] for r in doc["reports"]] == ["xsec2.i", "xsec2.ii"]


def test_lemma_dle(tmp_path, capsys):
    path = tmp_path / "dle.json"
    code, _, _ = run(["lemma", "dle", "random-multi:t=80,p=5", "--eps", "0.1", "--seed", "7",
                      "--out", str(path)], capsys)
    doc = json.loads(path.read_text())
    assert code == 0 and doc["seed"] == 7
    rep = doc["reports"][0]
    assert rep["verdict"] == "holds" and float(rep["slack"]) > 0


def test_lemma_text_format(capsys):
    code, out, _ = run(["lemma", "xple2", "tripartite:30:0.3,0.7", "--format", "text"], capsys)
    assert code == 0 and "seed = 0" in out and 'reports.0.lemma = "xple2.i"' in out


@pytest.mark.parametrize("argv", [
    ["lemma", "nope", "random:10x10:0.5"],
    ["lemma", "dle", "random:10x10:0.5"],
    ["lemma", "xsec", "random:400x10:0.5"],
    [],
])
def test_lemma_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "usage" in err


def test_regularity_cliques(tmp_path, capsys):
    part, rep = tmp_path / "part.txt", tmp_path / "rep.json"
    code, _, _ = run(["regularity", "cliques:4x50", "--l", "4", "--eps", "0.2",
                      "--partition", str(part), "--out", str(rep)], capsys)
    doc = json.loads(rep.read_text())
    assert code == 0 and doc["condition_i"] and doc["condition_ii"] and doc["seed"] == 0
    assert doc["dichotomy"]["all_within_sqrt_eps"]
    assert part.read_text().startswith("V0:\nV1: ")


def test_regularity_from_file(tmp_path, capsys):
    g = tmp_path / "p.txt"
    run(["gen", "paley:401", "--out", str(g)], capsys)
    code, out, _ = run(["regularity", str(g), "--l", "8", "--eps", "0.3"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["falsified_pair_count"] == 0


def test_regularity_l_too_large(capsys):
    code, _, err = run(["regularity", "paley:13", "--l", "7"], capsys)
    assert code == 2 and "l=7" in err


def test_feasibility(capsys):
    code, out, _ = run(["feasibility", "10", "3", "0", "1"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["multiplicities"] == ["5", "4"] and doc["feasible"]
    code, _, _ = run(["feasibility", "21", "8", "1", "4"], capsys)
    assert code == 1


def test_byte_identical_reruns(tmp_path, capsys):
    cmds = [
        ["gen", "lattice:6"],
        ["sweep", "triangular", "5", "9"],
        ["lemma", "lebs", "random-multi:t=20,p=3", "--seed", "3"],
        ["regularity", "paley:101", "--l", "4", "--eps", "0.25", "--seed", "5"],
    ]
    for i, cmd in enumerate(cmds):
        a, b = tmp_path / f"a{i}", tmp_path / f"b{i}"
        run(cmd + ["--out", str(a)], capsys)
        run(cmd + ["--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "srglab.cli", "gen", "cliques:3x4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "SR(12,3,2,0)"
