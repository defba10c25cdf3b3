import cmath
import json
import math
import subprocess
import sys

import pytest

from fracspline import cli
from fracspline.serialize import read_grid_csv, read_table_csv
from fracspline.splines import bspline_frac


def run(*args):
    return cli.main([str(a) for a in args])


def test_parse_real_tokens():
    assert cli.parse_real("sqrt5") == math.sqrt(5)
    assert cli.parse_real("pi") == math.pi
    assert cli.parse_real("-1/4") == -0.25
    assert cli.parse_real_list("1.25:2:0.25") == [1.25, 1.5, 1.75, 2.0]
    assert cli.parse_real_list("0.25,1.5,sqrt5")[2] == math.sqrt(5)
    assert cli.parse_int_list("1:5") == [1, 2, 3, 4, 5]


def test_eval_row_count(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run("eval", "spline", "--n", 3, "--x0", 0, "--x1", 3, "--step", 0.01, "--out", out) == 0
    g = read_grid_csv(out)
    assert len(g) == 301
    assert "[ok] B_3 peak at 1.5" in capsys.readouterr().err


def test_eval_is_byte_identical(tmp_path):
    for name in ("a.csv", "b.csv"):
        run("eval", "fracspline", "--alpha", "2.5", "--x0", -1, "--x1", 6, "--step", 0.05, "--out", tmp_path / name)
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_fractional_family_columns(tmp_path):
    out = tmp_path / "fam.csv"
    assert run("eval", "fracspline", "--alpha", "1.25:4:0.25", "--x0", -1, "--x1", 8, "--step", 0.1, "--out", out) == 0
    header, rows = read_table_csv(out)
    assert len(header) == 13
    i = header.index("B_2.5")
    for row in rows[::7]:
        assert row[i] == pytest.approx(bspline_frac(2.5, row[0]), abs=0)


def test_polyspline_with_irrational_order(tmp_path):
    out = tmp_path / "p.csv"
    assert run("eval", "polyspline", "--alpha", "0.25,1.5,sqrt5", "--nmax", 3, "--x0", 0, "--x1", 5, "--step", 0.05,
               "--out", out) == 0
    header, _ = read_table_csv(out)
    assert len(header) == 1 + 3 * 4
    assert any(h.startswith("S_3_2.236067977499789") for h in header)


def test_kernel_grid(tmp_path):
    out = tmp_path / "k.csv"
    assert run("eval", "kernel", "--alpha", 2, "--x0", 0, "--x1", 3, "--step", 1, "--out", out) == 0
    assert read_grid_csv(out).values == (0.0, 1.0, 2.0, 3.0)


def test_symbol_rows(tmp_path):
    out = tmp_path / "sym.csv"
    assert run("symbol", "--alpha", 1, "--omega0", -2, "--omega1", 2, "--step", 0.25, "--out", out) == 0
    header, rows = read_table_csv(out)
    assert header == ["omega", "re", "im"]
    by_w = {r[0]: complex(r[1], r[2]) for r in rows}
    assert by_w[0.0] == 1
    for w, v in by_w.items():
        if w:
            assert abs(v - (1 - cmath.exp(-1j * w)) / (1j * w)) < 1e-14
            assert v == by_w[-w].conjugate()


def test_delta_dump(tmp_path):
    out = tmp_path / "d.json"
    assert run("delta", "--alpha", 2.5, "--order", 0, "--out", out) == 0
    doc = json.loads(out.read_text())
    assert len(doc["expansion"]["coeffs"]) == 1
    assert run("delta", "--alpha", 3, "--x", 0, "--order", 6, "--shifted", "--out", out) == 0
    doc = json.loads(out.read_text())
    c = doc["expansion"]["coeffs"]
    d = doc["shifted"]["coeffs"]
    assert d == [[(-1) ** m * re, (-1) ** m * im] for m, (re, im) in enumerate(c)]
    from fractions import Fraction

    assert [float(Fraction(s)) for s in doc["exact_coeffs"]] == [re for re, _ in c]


def test_usage_errors_exit_2(capsys):
    assert run("eval", "spline", "--bogus", 1) == 2
    assert run("eval", "spline", "--n", 3, "--x0", 1, "--x1", 0, "--step", 0.1) == 2
    assert run("eval", "fracspline", "--alpha", 0.5, "--x0", 0, "--x1", 1, "--step", 0.1) == 2
    assert run("eval", "spline", "--n", "x", "--x0", 0, "--x1", 1, "--step", 0.1) == 2
    assert run("verify", "--suite", "everything") == 2
    assert "usage" in capsys.readouterr().err


def test_io_error_exit_3(tmp_path):
    assert run("eval", "spline", "--n", 2, "--x0", 0, "--x1", 1, "--step", 0.5, "--out", tmp_path / "no" / "x.csv") == 3
    assert run("eval", "spline", "--config", tmp_path / "missing.cfg") == 3


def test_config_file_merges_under_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# grid\nx0 = 0\nx1 = 2\nstep = 0.5\nn = 2\n")
    out = tmp_path / "o.csv"
    assert run("eval", "spline", "--config", cfg, "--step", 1, "--out", out) == 0
    assert read_grid_csv(out).values == (0.0, 1.0, 0.0)
    cfg.write_text("colour = red\n")
    assert run("eval", "spline", "--config", cfg) == 2


def test_verify_combinatorics(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run("verify", "--suite", "combinatorics", "--max-n", 12, "--out", out) == 0
    text = capsys.readouterr().out
    assert "failed_established=0" in text
    doc = json.loads(out.read_text())
    zero = [r for r in doc["reports"] if r["identity_id"] == "bernoulli_stirling" and r["variant"] == "x=0 sign+"]
    assert zero and all(r["status"] == "exact_equal" for r in zero)


def test_verify_exit_1_on_failure(monkeypatch):
    from fracspline import combinatorics as comb

    real = comb.stirling2
    monkeypatch.setattr(comb, "stirling2", lambda m, n: real(m, n) + (m == 5))
    assert run("verify", "--suite", "combinatorics", "--max-n", 3) == 1


def test_figures_command(tmp_path, capsys):
    assert run("figures", "--outdir", tmp_path, "--step", 0.05) == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig1_bsplines.csv", "fig2_fractional_bsplines.csv", "fig3_spline_polynomials.csv"]
    assert "FAIL" not in capsys.readouterr().out


def test_module_entry_point():
    cmd = [sys.executable, "-m", "fracspline", "eval", "spline", "--n", "1", "--x0", "0", "--x1", "1", "--step", "0.5"]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["x,value", "0,1", "0.5,1", "1,0"]
