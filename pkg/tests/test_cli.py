import csv
import json
import math
import subprocess
import sys

import pytest

from su11acs.cli import main
from su11acs.scan import ScanConfig


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_state_vacuum(tmp_path, capsys):
    out = tmp_path / "vac.json"
    code, _, _ = run(capsys, "state", "--out", str(out))
    assert code == 0
    state = json.loads(out.read_text())
    report = json.loads((tmp_path / "vac.moments.json").read_text())
    assert state["repr"] == {"k": 0.25, "flavor": "bosonic_even"}
    assert state["amplitudes"][0] == [1.0, 0.0]
    assert report["var_X"] == pytest.approx(1) and report["var_Y"] == pytest.approx(1)


def test_state_figure1_point_is_y_squeezed(capsys):
    x = 3.0
    code, out, _ = run(
        capsys, "state", "--z-re", "1", "--u-re", str((1 + x * x) ** 0.5), "--v-re", str(-x), "--trunc", "3000"
    )
    assert code == 0
    assert json.loads(out)["moments"]["var_Y"] < 1


def test_state_not_normalizable(capsys):
    code, _, err = run(capsys, "state", "--u-re", "1", "--w-re", "3")
    assert code == 2
    assert "sqrt(w^2-4uv)" in err and ">= 1" in err


def test_state_truncation_exit_code(capsys):
    # squeezed cat with r = 2 does not fit in N = 50
    r = 2.0
    code, _, err = run(
        capsys, "state", "--z-im", "1",
        "--u-re", str(math.cosh(r) ** 2), "--v-re", str(-math.sinh(r) ** 2), "--w-im", str(-math.sinh(2 * r)),
        "--trunc", "50",
    )
    assert code == 3
    assert "tail weight" in err


def test_state_abstract_needs_k(capsys):
    code, _, err = run(capsys, "state", "--flavor", "abstract")
    assert code == 2
    code, out, _ = run(capsys, "state", "--flavor", "abstract", "--k", "1.5", "--z-re", "0.3")
    assert code == 0
    moments = json.loads(out)["moments"]
    assert moments["var_q"] is None and "var_q" in moments["undefined"]


def test_scan_from_config_with_overrides(tmp_path, capsys):
    cfg = tmp_path / "scan.ini"
    cfg.write_text(ScanConfig("squeezed_cat", 0.0, 0.6, 5, ("q", "X"), {"r": 0.31}, 400, str(tmp_path / "a.csv")).to_ini())
    code, _, _ = run(capsys, "scan", "--config", str(cfg))
    assert code == 0
    first = (tmp_path / "a.csv").read_text()
    assert first.splitlines()[0].startswith("d,var_q,var_X")
    assert len(first.splitlines()) == 6
    code, out, _ = run(capsys, "scan", "--config", str(cfg), "--points", "3", "--param", "r=0.5", "--out", str(tmp_path / "b.csv"))
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "b.csv").open()))
    assert len(rows) == 3
    assert rows[1]["var_q"] not in first  # different squeezing


def test_scan_from_flags(capsys):
    code, out, _ = run(capsys, "scan", "--family", "w0_even", "--lo", "0", "--hi", "4", "--points", "3",
                       "--observables", "Y", "--trunc", "3000", "--z-re", "1")
    assert code == 0
    ys = [float(r["var_Y"]) for r in csv.DictReader(out.splitlines())]
    assert ys[0] > ys[1] > ys[2]


def test_scan_errors(capsys):
    assert run(capsys, "scan")[0] == 2
    assert run(capsys, "scan", "--family", "w0_even", "--lo", "0")[0] == 2
    assert run(capsys, "scan", "--family", "w0_even", "--lo", "0", "--hi", "1", "--points", "2", "--param", "x")[0] == 2


def test_figure_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "figure", "fig2", "--out", str(a))[0] == 0
    assert run(capsys, "figure", "fig2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "d,two_var_q,var_X"


def test_check_subset(capsys):
    code, out, _ = run(capsys, "check", "--only", "4,9")
    assert code == 0
    assert out.splitlines()[0].startswith("[PASS]  4")
    assert out.splitlines()[-1] == "2/2 criteria passed"
    code2, out2, _ = run(capsys, "check", "--only", "4,9")
    assert out2 == out


def test_check_under_truncation_fails_loudly(capsys):
    code, out, _ = run(capsys, "check", "--only", "11", "--trunc", "50")
    assert code == 1
    assert "[FAIL] 11" in out and "TruncationError" in out


def test_console_entry_points():
    res = subprocess.run([sys.executable, "-m", "su11acs", "state", "--z-re", "0.5"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["moments"]["mean_n"] > 0
    res = subprocess.run([sys.executable, "-m", "su11acs", "state", "--u-re", "1", "--w-re", "3"], capture_output=True, text=True)
    assert res.returncode == 2
