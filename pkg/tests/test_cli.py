import io
import json

import pytest

from rainbowgirth.cli import DEFAULT_SEED, main, verification_rows
from rainbowgirth.constructions import half_barrier, mixed_counts, random_mixed, star_extremal
from rainbowgirth.graph_core import parse, serialize


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="g.ecg"):
        path = tmp_path / name
        path.write_text(serialize(g))
        return str(path)

    return write


def test_gen_star_extremal(capsys):
    assert main(["gen", "star-extremal", "--k", "2", "--r", "3"]) == 0
    assert parse(capsys.readouterr().out) == star_extremal(2, 3)


def test_gen_half_barrier_reports_discrepancy(capsys):
    assert main(["gen", "half-barrier", "--m", "1"]) == 0
    out, err = capsys.readouterr()
    assert parse(out) == half_barrier(1)
    assert "rainbow girth 3" in err and "claimed 2n/3 = 4" in err and "DISCREPANCY" in err
    assert "witness cycle 1 2 3" in err


def test_gen_random_mixed_default_seed(capsys):
    assert main(["gen", "random-mixed", "--n", "60", "--alpha", "0.75"]) == 0
    out = capsys.readouterr().out
    assert parse(out) == random_mixed(60, mixed_counts(60, 0.75), DEFAULT_SEED)
    assert main(["gen", "random-mixed", "--n", "60", "--alpha", "0.75", "--seed", "1"]) == 0
    assert capsys.readouterr().out != out


def test_gen_digraph(tmp_path, capsys):
    arcs = tmp_path / "arcs.txt"
    arcs.write_text("0 1\n1 2\n2 0\n")
    assert main(["gen", "digraph", "--arcs", str(arcs)]) == 0
    g = parse(capsys.readouterr().out)
    assert g.n == 3 and len(g.classes) == 3
    arcs.write_text("0 1\n1 0\n")
    assert main(["gen", "digraph", "--arcs", str(arcs)]) == 1


def test_gen_lower_bound(capsys):
    assert main(["gen", "lower-bound", "--n", "64", "--c", "0.75", "--seed", "3"]) == 0
    out, err = capsys.readouterr()
    assert parse(out).validate() == [] and "no rainbow cycle of length <= 4" in err


def test_gen_usage_errors(capsys):
    assert main(["gen", "random-mixed"]) == 1
    assert main(["gen", "random-mixed", "--n", "4", "--triangle", "4"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["gen", "hexagon"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_rgirth(graph_file, capsys):
    path = graph_file(star_extremal(2, 3))
    assert main(["rgirth", path, "--witness"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "rgirth 4" and out[1].startswith("cycle ") and out[2].startswith("colors ")
    assert main(["rgirth", path, "--oracle"]) == 0
    assert capsys.readouterr().out == "rgirth 4\n"
    assert main(["rgirth", path, "--max-len", "3"]) == 0
    assert "none" in capsys.readouterr().out


def test_rgirth_invalid_input(tmp_path, capsys):
    bad = tmp_path / "bad.ecg"
    bad.write_text("ecg 1\nn 3\nclass 0 matching2 0 1 1 2\n")
    assert main(["rgirth", str(bad)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["rgirth", str(tmp_path / "missing.ecg")]) == 1


def test_rgirth_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(serialize(half_barrier(1))))
    assert main(["rgirth"]) == 0
    assert capsys.readouterr().out == "rgirth 3\n"


def test_sample_auto(graph_file, capsys):
    path = graph_file(random_mixed(500, mixed_counts(500, 0.75), 5))
    assert main(["sample", path, "--auto-params", "--emit-witness", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert "success after" in out and "cycle " in out
    assert main(["sample", path, "--auto-params", "--emit-witness", "--seed", "2"]) == 0
    assert capsys.readouterr().out == out


def test_sample_infeasible(graph_file, capsys):
    assert main(["sample", graph_file(star_extremal(2, 3))]) == 3
    assert "no sampling parameters" in capsys.readouterr().out
    path = graph_file(random_mixed(60, mixed_counts(60, 0.75), 5), "m.ecg")
    assert main(["sample", path, "--p", "0.5", "--eps", "0.01"]) == 3
    assert main(["sample", path, "--p", "0.5"]) == 1


def test_sample_failure_reports_near_miss(graph_file, capsys):
    path = graph_file(random_mixed(60, mixed_counts(60, 0.75), 5))
    assert main(["sample", path, "--tries", "3"]) in (0, 3)
    out = capsys.readouterr().out
    assert "success after" in out or "closest miss" in out


def test_bound(capsys):
    assert main(["bound", "--n", "4", "--k", "2"]) == 0
    assert capsys.readouterr().out == "10\n"
    assert main(["bound", "--n", "3", "--k", "2"]) == 1


def test_params(graph_file, capsys):
    assert main(["params", graph_file(random_mixed(400, mixed_counts(400, 0.75), 1))]) == 0
    out = capsys.readouterr().out
    assert "p=0.995 eps=0.001" in out and "f'(1) = 0.5" in out
    assert main(["params", graph_file(star_extremal(2, 3), "s.ecg")]) == 3


def test_verify(capsys):
    assert main(["verify"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(verification_rows()) and all(ln.startswith("PASS") for ln in lines)


def test_exp_csv_and_json(tmp_path, capsys):
    out = tmp_path / "r.csv"
    argv = ["exp", "--n", "120,180,240", "--trials", "2", "--seed", "4", "--out", str(out)]
    assert main(argv) == 0
    first = out.read_text()
    assert first.count("\n") == 7
    assert main(argv) == 0
    assert out.read_text() == first
    assert main(["exp", "--n", "120,180,240", "--trials", "2", "--seed", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["records"]) == 6 and doc["config"]["master_seed"] == 4


def test_exp_zero_trials(capsys):
    assert main(["exp", "--trials", "0"]) == 0
    assert capsys.readouterr().out.count("\n") == 1


def test_lower_bound_cli(capsys):
    assert main(["lower-bound", "--n", "64,128", "--seeds", "2", "--c", "0.75"]) == 0
    out, err = capsys.readouterr()
    assert out.startswith("n,seed,c,max_len") and out.count("\n") == 5
    assert "certified 2/2" in err
