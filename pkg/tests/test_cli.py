import csv
import subprocess
import sys

import pytest

from flatgrid import tsurf
from flatgrid.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def keyvals(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def test_build_semiregular(tmp_path, capsys):
    out = tmp_path / "y.tsurf"
    code, _, _ = run(capsys, "build", "--m", "5", "--n", "4", "--model", "semiregular", "--out", str(out))
    assert code == 0
    assert len(tsurf.read(out).polygons) == 5


def test_build_quotient_torus(tmp_path, capsys):
    out = tmp_path / "q.tsurf"
    assert run(capsys, "build", "--m", "4", "--n", "4", "--model", "quotient", "--out", str(out))[0] == 0
    code, text, _ = run(capsys, "analyze", str(out))
    assert code == 0
    kv = keyvals(text)
    assert kv["genus"] == "1" and kv["zeros"] == "none"


@pytest.mark.parametrize("argv", [
    ["build", "--m", "2", "--n", "2"],
    ["build", "--m", "5", "--n", "4", "--model", "quotient"],
    ["build", "--m", "5"],
    ["verify", "--m", "5", "--n", "4", "--which", "iota"],
    ["verify", "--m", "5", "--n", "4", "--which", "sc"],
    ["nonsense"],
])
def test_bad_parameters_exit_2(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_analyze_grid(tmp_path, capsys):
    out = tmp_path / "x.tsurf"
    run(capsys, "build", "--m", "5", "--n", "4", "--out", str(out))
    code, text, _ = run(capsys, "analyze", str(out))
    kv = keyvals(text)
    assert code == 0
    assert kv["genus"] == "6" and kv["zeros"] == "1x10"
    assert kv["valid"] == "true" and kv["components"] == "1"
    assert kv["cone_angles"].split()[0] == "2pi*11"


def test_analyze_errors(tmp_path, capsys):
    bad = tmp_path / "bad.tsurf"
    bad.write_text("TSURF 1\npolygons 1\npoly 0 3 0 0 1\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 3 and "line 3" in err
    assert run(capsys, "analyze", str(tmp_path / "missing.tsurf"))[0] == 3
    unglued = tmp_path / "open.tsurf"
    unglued.write_text("TSURF 1\npolygons 1\npoly 0 4 0 0 1 0 1 1 0 1\nglue 0 0 0 2\n")
    code, text, _ = run(capsys, "analyze", str(unglued))
    assert code == 1 and "valid: false" in text


@pytest.mark.parametrize("which", ["mu", "nu", "iota", "veech", "sc"])
def test_verify_passes(which, capsys):
    code, text, _ = run(capsys, "verify", "--m", "6", "--n", "4", "--which", which)
    assert code == 0, text
    assert "status: pass" in text


def test_verify_veech_reports_literal_sign(capsys):
    code, text, _ = run(capsys, "verify", "--m", "4", "--n", "5", "--which", "veech")
    assert code == 0
    assert "literal sign fails for: (BC)^5 = -I" in text


def test_table(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, err = run(capsys, "table", "--max-m", "8", "--max-n", "5", "--out", str(out))
    assert code == 0, err
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["m", "n", "gamma", "model", "genus", "zeros", "zero_order", "arithmetic", "excluded"]
    body = {",".join(r) for r in rows[1:]}
    assert "5,4,1,grid,6,1,10,false,false" in body
    assert "4,4,4,grid,3,4,1,true,true" in body
    assert "8,4,4,quotient,5,2,4,false,false" in body
    assert (tmp_path / "t.png").stat().st_size > 1000
    # deterministic output
    again = tmp_path / "u.csv"
    run(capsys, "table", "--max-m", "8", "--max-n", "5", "--out", str(again), "--no-figure")
    assert again.read_text() == out.read_text()
    assert not (tmp_path / "u.png").exists()


def test_table_unwritable(tmp_path, capsys):
    assert run(capsys, "table", "--max-m", "3", "--max-n", "3",
               "--out", str(tmp_path / "no" / "t.csv"))[0] == 3


def test_render(tmp_path, capsys):
    src = tmp_path / "y.tsurf"
    run(capsys, "build", "--m", "6", "--n", "4", "--model", "semiregular", "--out", str(src))
    svg = tmp_path / "y.svg"
    assert run(capsys, "render", str(src), "--out", str(svg))[0] == 0
    assert svg.read_text().count("<polygon") == 6
    assert run(capsys, "render", str(tmp_path / "none.tsurf"), "--out", str(svg))[0] == 3


def test_tolerance_env(monkeypatch, capsys):
    monkeypatch.setenv("FLATGRID_TOL", "abc")
    assert run(capsys, "verify", "--m", "6", "--n", "4", "--which", "mu")[0] == 2
    monkeypatch.setenv("FLATGRID_TOL", "-1")
    assert run(capsys, "verify", "--m", "6", "--n", "4", "--which", "mu")[0] == 2
    monkeypatch.setenv("FLATGRID_TOL", "1e-8")
    assert run(capsys, "verify", "--m", "6", "--n", "4", "--which", "mu")[0] == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "flatgrid", "build", "--m", "3", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("TSURF 1\n")
