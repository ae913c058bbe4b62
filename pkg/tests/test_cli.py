from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from eigenbound.cli import main, parse_int_range, parse_real_range, UsageError


def run(args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "eigenbound", *args], capture_output=True, text=True, env=env
    )


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_csv(capsys):
    code, out, _ = call(capsys, "bound", "--n", "10", "--k", "1", "--dtilde", "3.14159265", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "K", "d_tilde", "reilly", "ling", "refined", "implicit", "best", "ratio"]
    assert float(rows[0]["ling"]) == pytest.approx(5.5, rel=1e-8)
    assert float(rows[0]["refined"]) == pytest.approx(5.665338, abs=1e-6)


def test_bound_csv_round_trip(capsys):
    from eigenbound.bounds import GeometryInput, bound_report

    _, out, _ = call(capsys, "bound", "--n", "7", "--k", "0.3", "--dtilde", "2.2", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    rep = bound_report(GeometryInput(7, 0.3, 2.2))
    assert float(row["refined"]) == rep.refined
    assert float(row["implicit"]) == rep.implicit
    assert float(row["ratio"]) == rep.ratio_refined_over_ling


def test_bound_flat_case(capsys):
    code, out, _ = call(capsys, "--format", "csv", "bound", "--n", "2", "--k", "0", "--dtilde", "3.14159265")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0 and row["reilly"] == ""
    for key in ("ling", "refined", "implicit"):
        assert float(row[key]) == pytest.approx(1.0, rel=1e-8)


def test_bound_invalid_dimension(capsys):
    code, _, err = call(capsys, "bound", "--n", "1", "--k", "1", "--dtilde", "1")
    assert code == 2 and "n >= 2" in err


def test_bound_json(capsys):
    code, out, _ = call(capsys, "bound", "--n", "3", "--k", "1", "--dtilde", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["reilly"] == 3.0 and "manifest" in doc


def test_oracle_hemisphere(capsys):
    code, out, _ = call(capsys, "oracle", "--n", "10", "--k", "1", "--r", "1.5707963")
    assert code == 0
    assert float(out.split()[1]) == pytest.approx(10.0, rel=1e-6)


def test_oracle_inadmissible(capsys):
    code, _, err = call(capsys, "oracle", "--n", "2", "--k", "1", "--r", "2.0")
    assert code == 2 and "mean curvature" in err


def test_oracle_json(capsys):
    code, out, _ = call(capsys, "oracle", "--n", "2", "--k", "1", "--r", "0.785398", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert {"lambda", "residual", "bisection_iterations"} <= set(doc)
    assert doc["lambda"] == pytest.approx(9.0397, rel=1e-4)


def test_verify_exit_codes():
    assert run(["verify"]).returncode == 0
    forced = run(["verify", "--tol", "xi_mean=1e-30"])
    assert forced.returncode == 1
    assert "FAIL  xi_mean" in forced.stdout
    assert run(["verify", "--tol", "xi_mean"]).returncode == 2
    assert run(["verify", "--tol", "unknown=1"]).returncode == 2


def test_verify_json_is_deterministic():
    a, b = (json.loads(run(["verify", "--json"]).stdout) for _ in range(2))
    assert len(a["checks"]) >= 20
    assert set(a["manifest"]) == {"tool_version", "timestamp", "seed", "config_digest"}
    assert a["checks"] == b["checks"]
    assert a["manifest"]["config_digest"] == b["manifest"]["config_digest"]


def test_seed_from_environment():
    import os

    env = dict(os.environ, EIGENBOUND_SEED="11")
    doc = json.loads(run(["verify", "--json"], env=env).stdout)
    assert doc["manifest"]["seed"] == 11
    env["EIGENBOUND_SEED"] = "eleven"
    assert run(["verify"], env=env).returncode == 2


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = call(capsys, "sweep", "--n", "2..3", "--k", "1", "--r", "0.6..1.5707963267948966", "--steps", "3", "--out", str(out))
    assert code == 0
    data = out.read_bytes()
    assert b"\r\n" not in data
    rows = list(csv.DictReader(io.StringIO(data.decode())))
    assert len(rows) == 6
    assert list(rows[0])[:12] == [
        "n", "K", "R", "d_tilde", "lambda_true", "reilly", "ling", "refined", "implicit", "best", "gap_best", "ratio",
    ]
    assert [int(r["n"]) for r in rows] == [2, 2, 2, 3, 3, 3]
    for r in rows:
        assert float(r["gap_best"]) >= -1e-8 * float(r["lambda_true"])
    assert abs(float(rows[-1]["gap_best"])) < 1e-7


def test_sweep_single_point_matches_bound_and_oracle(tmp_path, capsys):
    out = tmp_path / "one.csv"
    call(capsys, "sweep", "--n", "4", "--k", "1", "--r", "0.9", "--out", str(out))
    row = next(csv.DictReader(io.StringIO(out.read_text())))
    _, bound_out, _ = call(capsys, "bound", "--n", "4", "--k", "1", "--dtilde", "1.8", "--format", "csv")
    _, oracle_out, _ = call(capsys, "oracle", "--n", "4", "--k", "1", "--r", "0.9", "--format", "csv")
    b = next(csv.DictReader(io.StringIO(bound_out)))
    o = next(csv.DictReader(io.StringIO(oracle_out)))
    assert row["best"] == b["best"] and row["refined"] == b["refined"]
    assert row["lambda_true"] == o["lambda"]


def test_sweep_unwritable(capsys, tmp_path):
    code, _, err = call(capsys, "sweep", "--n", "2", "--k", "1", "--r", "0.5", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2 and "cannot write" in err


def test_sweep_inadmissible_radius(capsys, tmp_path):
    code, _, _ = call(capsys, "sweep", "--n", "2", "--k", "1", "--r", "1..2", "--steps", "2", "--out", str(tmp_path / "x.csv"))
    assert code == 2


def test_ranges():
    assert parse_int_range("2..5") == [2, 3, 4, 5]
    assert parse_int_range("3") == [3]
    assert parse_real_range("0..1", 3) == [0.0, 0.5, 1.0]
    assert parse_real_range("0.5", 4) == [0.5]
    for bad in ("5..2", "a..b"):
        with pytest.raises(UsageError):
            parse_int_range(bad)
    with pytest.raises(UsageError):
        parse_real_range("0..1", 1)


def test_usage_error_exit_code():
    assert run(["bound", "--n", "2"]).returncode == 2
    assert run([]).returncode == 2


def test_floats_have_seventeen_digits(capsys):
    _, out, _ = call(capsys, "bound", "--n", "3", "--k", "1", "--dtilde", "1", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert len(row["refined"].replace(".", "").lstrip("0")) >= 15
    assert not math.isnan(float(row["refined"]))
