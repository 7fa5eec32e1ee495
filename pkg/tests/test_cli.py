"""Command line interface, run in-process through main(argv)."""
import csv
import json

import numpy as np
import pytest

from trilor import canonical, cli, states

RT2 = 1.0 / np.sqrt(2.0)


def run_analyze(tmp_path, c, name="state"):
    src = tmp_path / f"{name}.json"
    out = tmp_path / f"{name}-report.json"
    states.save_state(src, c)
    code = cli.main(["analyze", "--in", str(src), "--out", str(out)])
    return code, out


def test_analyze_ghz(tmp_path):
    code, out = run_analyze(tmp_path, states.GHZ)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["format"] == "3q-report-v1"
    assert abs(doc["input_norm"] - 1.0) < 1e-12
    assert abs(doc["lu"]["I1"] - 0.5) < 1e-12
    assert abs(doc["lu"]["I4"] - 0.25) < 1e-12
    assert abs(doc["lu"]["I5"] - 1.0 / 16.0) < 1e-12
    assert abs(doc["slocc"]["K1"] - 0.5) < 1e-12
    assert abs(doc["slocc"]["K4"] - 0.25) < 1e-12
    assert abs(doc["tangle"] - 1.0) < 1e-10
    for pair in ("AB", "BC", "AC"):
        assert abs(doc["pairs"][pair]["concurrence"]) < 1e-10
        assert abs(doc["pairs"][pair]["mu0"] - 1.0) < 1e-10
        assert doc["pairs"][pair]["case"] == "I"
    assert np.allclose(doc["five_term"]["lambda"], [RT2, 0, 0, 0, RT2], atol=1e-10)
    assert doc["backend"] in ("compiled", "python")


def test_analyze_is_deterministic(tmp_path):
    c = states.haar_random_state(99)
    _, out1 = run_analyze(tmp_path, c, "a")
    _, out2 = run_analyze(tmp_path, c, "b")
    assert out1.read_bytes() == out2.read_bytes()


def test_analyze_missing_file(tmp_path, capsys):
    code = cli.main(
        ["analyze", "--in", str(tmp_path / "nope.json"), "--out", str(tmp_path / "o")]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_analyze_wrong_format(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text('{"format": "something-else"}\n')
    code = cli.main(["analyze", "--in", str(src), "--out", str(tmp_path / "o")])
    assert code == 1


def test_analyze_corrupt_json(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text("{not json")
    code = cli.main(["analyze", "--in", str(src), "--out", str(tmp_path / "o")])
    assert code == 1


def test_verify_passes(capsys):
    code = cli.main(["verify", "--n", "25", "--seed", "3"])
    assert code == 0
    text = capsys.readouterr().out
    assert "[ok]" in text and "[FAIL]" not in text
    assert "naive-k1-drift" in text
    assert "states: 25" in text


def test_verify_impossible_tolerance(capsys):
    code = cli.main(["verify", "--n", "5", "--seed", "3", "--tol", "1e-300"])
    assert code == 2
    assert "[FAIL]" in capsys.readouterr().out


def test_verify_rejects_bad_n(capsys):
    assert cli.main(["verify", "--n", "0"]) == 1
    assert cli.main(["verify", "--n", "5", "--tol", "-1"]) == 1


def test_scan_family_one(tmp_path):
    out = tmp_path / "one.csv"
    code = cli.main(
        ["scan-family", "--family", "one", "--grid", "0.1:3.1:5", "--out", str(out)]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 5
    assert abs(float(rows[0]["beta"]) - 0.1) < 1e-15
    for row in rows:
        assert float(row["resid_concurrence"]) < 1e-10
        assert float(row["resid_tangle"]) < 1e-10
        assert abs(float(row["mu0_numeric"]) - float(row["u_closed"])) < 1e-10


def test_scan_family_three(tmp_path):
    out = tmp_path / "three.csv"
    code = cli.main(
        [
            "scan-family",
            "--family",
            "three",
            "--grid",
            "0.3:1:2,0.5:2.5:2,0:6.2:2",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 8
    for row in rows:
        assert float(row["resid_mu0"]) < 1e-9
        assert float(row["resid_mu2"]) < 1e-9
        assert float(row["resid_tangle"]) < 1e-9
        assert row["paper_c_is_doubled"] == "true"
        assert abs(
            float(row["c_paper"]) - 2.0 * float(row["c_consistent"])
        ) < 1e-12


def test_scan_family_bad_grids(tmp_path):
    out = str(tmp_path / "x.csv")
    assert cli.main(["scan-family", "--family", "one", "--grid", "0.1:3.1", "--out", out]) == 1
    assert cli.main(["scan-family", "--family", "one", "--grid", "0:1:3,0:1:3", "--out", out]) == 1
    assert cli.main(["scan-family", "--family", "three", "--grid", "0.1:1:3", "--out", out]) == 1
    assert cli.main(["scan-family", "--family", "one", "--grid", "0.1:3.1:0", "--out", out]) == 1
    assert cli.main(["scan-family", "--family", "one", "--grid", "a:b:3", "--out", out]) == 1
    # out-of-domain axis values surface as validation errors, not tracebacks
    assert cli.main(["scan-family", "--family", "one", "--grid", "0:3.1:4", "--out", out]) == 1


def test_canonical_round_trip(tmp_path):
    src = tmp_path / "w.json"
    out = tmp_path / "w-acin.json"
    states.save_state(src, states.W)
    code = cli.main(["canonical", "--in", str(src), "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["format"] == "3q-acin-v1"
    ref = canonical.acin_reduce(states.W).params
    assert np.allclose(doc["lambda"], ref.lam, atol=1e-12)
    assert abs(doc["phi"] - ref.phi) < 1e-12
    assert abs(doc["delta"] - ref.delta) < 1e-12
    assert doc["support_residual"] < 1e-8
    assert abs(doc["sum_lambda_sq"] - 1.0) < 1e-9
    U = np.array([[z["re"] + 1j * z["im"] for z in row] for row in doc["unitaries"]["A"]])
    assert np.abs(U.conj().T @ U - np.eye(2)).max() < 1e-10


def test_unknown_command():
    assert cli.main(["bogus"]) == 1
    assert cli.main([]) == 1
