import json

import pytest

from steinergeom import fano, to_gp_v1, to_ls_v1, to_mu_v1, LinearSpace, MuFunction
from steinergeom.cli import main


@pytest.fixture
def fano_file(tmp_path):
    p = tmp_path / "fano.ls"
    p.write_text(to_ls_v1(fano()))
    return str(p)


@pytest.fixture
def mu1_file(tmp_path):
    p = tmp_path / "mu1.txt"
    p.write_text(to_mu_v1(MuFunction(1)))
    return str(p)


def test_validate_ok(fano_file, capsys):
    assert main(["validate", fano_file]) == 0
    assert "in K_0" in capsys.readouterr().out


def test_validate_json(fano_file, capsys):
    assert main(["validate", fano_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["points"] == 7 and payload["in_k0"] is True


def test_validate_rejects_garbage(tmp_path, capsys):
    p = tmp_path / "bad.ls"
    p.write_text("not a linear space\n")
    assert main(["validate", str(p)]) == 1


def test_delta_subset(fano_file, capsys):
    assert main(["delta", fano_file]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["delta", fano_file, "--subset", "0,1,2"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_icl_and_d(fano_file, capsys):
    assert main(["icl", fano_file, "--set", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0,1,2,3,4,5,6"
    assert main(["d", fano_file, "--set", "0,4"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_goodpairs(tmp_path, capsys):
    p = tmp_path / "line.ls"
    p.write_text(to_ls_v1(LinearSpace(3, [(0, 1, 2)])))
    assert main(["goodpairs", str(p), "--max-size", "3", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3
    assert all(r["code"] == "alpha" for r in rows)


def test_chi(tmp_path, capsys):
    M = tmp_path / "line4.ls"
    M.write_text(to_ls_v1(LinearSpace(4, [(0, 1, 2, 3)])))
    pair = tmp_path / "alpha.gp"
    pair.write_text(to_gp_v1(LinearSpace(3, [(0, 1, 2)]), [0, 1]))
    assert main(["chi", str(M), "--pair", str(pair), "--embed", "0,1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_amalgamate(tmp_path, mu1_file, capsys):
    F = tmp_path / "F.ls"
    F.write_text(to_ls_v1(LinearSpace(3, [(0, 1, 2)])))
    E = tmp_path / "E.ls"
    E.write_text(to_ls_v1(LinearSpace(3, [(0, 1, 2)])))
    assert main([
        "amalgamate", str(F), str(E), "--shared", "0,1", "--mu", mu1_file, "--json",
    ]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["outcome"] == "identified"
    assert payload["embedding"]["2"] == 2


def test_build_and_stats(tmp_path, mu1_file, capsys):
    out = tmp_path / "run.trace"
    assert main([
        "build", "--mu", mu1_file, "--steps", "80", "--seed", "3", "--out", str(out),
    ]) == 0
    text = out.read_text()
    assert text.startswith("trace v1\n")
    capsys.readouterr()

    ls = tmp_path / "built.ls"
    snap = text[text.index("linear-space v1"):]
    snap = snap[: snap.index("snapshot end")]
    ls.write_text(snap)
    assert main(["stats", str(ls), "--mu", mu1_file, "--bound", "6", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["violations"] == []


def test_gallery_outputs(capsys):
    assert main(["gallery", "fano"]) == 0
    assert "points 7" in capsys.readouterr().out
    assert main(["gallery", "ck", "--k", "2"]) == 0
    assert "points 10" in capsys.readouterr().out
    assert main(["gallery", "dk", "--k", "1"]) == 0
    assert "points 7" in capsys.readouterr().out
    assert main(["gallery", "chain", "--k", "2"]) == 0
    assert "points 13" in capsys.readouterr().out


def test_gallery_cyclegraph(fano_file, capsys):
    assert main(["gallery", "cyclegraph", fano_file, "--pair", "0,1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vertices"] == [3, 4, 5, 6]
    assert payload["a_edges"] == [[3, 4], [5, 6]]


def test_convert_roundtrip(tmp_path, fano_file, capsys):
    assert main(["convert", "--to", "two-sorted", fano_file]) == 0
    inc_text = capsys.readouterr().out
    assert inc_text.startswith("points 7\n")
    inc = tmp_path / "fano.inc"
    inc.write_text(inc_text)
    assert main(["convert", "--to", "one-sorted", str(inc)]) == 0
    assert capsys.readouterr().out == to_ls_v1(fano())
    assert main(["convert", "--to", "pbd", fano_file]) == 0
    assert "lambda 1" in capsys.readouterr().out


def test_check_runs(capsys):
    assert main([
        "check", "submodular", "--trials", "20", "--seed", "1", "--max-points", "7",
    ]) == 0
    assert "0 violations" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["icl"]) == 2


def test_size_limit_exit_code(tmp_path, capsys):
    p = tmp_path / "big.ls"
    p.write_text("linear-space v1\npoints 30\n")
    assert main(["d", str(p), "--set", "0"]) == 3
