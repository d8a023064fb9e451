import json
import math

import numpy as np
import pytest

from cnotsteer.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, main
from cnotsteer.sequences import matrix_from_json

from reference_data import (
    ENTANGLER_FRAME1_DELTA1,
    SINGLE_STEP_U_DELTA1,
    TABLE1_SINGLE,
    TABLE1_T2,
    TABLE2,
)


def _rows(path):
    lines = path.read_text().strip().split("\n")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_table1_contents(tmp_path):
    out = tmp_path / "table1.csv"
    assert main(["table1", "--out", str(out)]) == EXIT_OK
    header, rows = _rows(out)
    assert header == ["delta_over_g", "T2", "T1", "omega1_over_g"]
    assert len(rows) == 21
    by_delta = {float(r[0]): r for r in rows}

    r = by_delta[0.4]
    assert abs(float(r[1]) - TABLE1_T2[0.4]) < 1e-4
    assert abs(float(r[2]) - TABLE1_SINGLE[0.4][0]) < 5e-3
    assert abs(float(r[3]) - TABLE1_SINGLE[0.4][1]) < 5e-3

    r = by_delta[1.5]
    assert abs(float(r[1]) - TABLE1_T2[1.5]) < 1e-4
    assert r[2] == "" and r[3] == ""

    r = by_delta[0.0]
    assert abs(float(r[1]) - 1.0) < 1e-12
    assert abs(float(r[2]) - 1.0) < 5e-3
    assert abs(float(r[3]) - 3.8730) < 5e-3


def test_table2_contents(tmp_path):
    out = tmp_path / "table2.csv"
    assert main(["table2", "--out", str(out)]) == EXIT_OK
    header, rows = _rows(out)
    assert header == ["delta_over_g", "T1", "omega1_over_g", "G1", "G2"]
    assert len(rows) == 11
    by_delta = {float(r[0]): r for r in rows}
    for delta in (1.0, 1.2, 2.0):
        t_ref, om_ref, g1_ref, g2_ref = TABLE2[delta]
        r = by_delta[delta]
        assert abs(float(r[1]) - t_ref) < 5e-3
        assert abs(float(r[2]) - om_ref) < 5e-3
        assert abs(float(r[3]) - g1_ref) < 2e-3
        assert abs(float(r[4]) - g2_ref) < 2e-3


def test_gate_one_step_json(tmp_path):
    out = tmp_path / "gate.json"
    assert main(["gate", "--mode", "one-step", "--delta", "1.0", "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    u = matrix_from_json(payload["entangling_matrix"])
    # at delta = g the calibration objective pins the gate time only to
    # ~5e-4 (flat basin), which moves matrix entries by up to ~1e-3
    assert np.max(np.abs(u - SINGLE_STEP_U_DELTA1)) < 2.5e-3
    assert payload["fidelity"] is not None
    assert 1.0 - payload["fidelity"] < 1e-6
    assert payload["recipe"]["kind"] == "one-step"
    assert payload["recipe"]["t_units"] == "pi/2g"
    assert abs(payload["recipe"]["t_value"] - TABLE2[1.0][0]) < 5e-3
    assert len(payload["recipe"]["euler_angles"]) == 12
    assert abs(payload["weyl_point"]["c1"] - math.pi / 2.0) < 1e-3
    assert abs(payload["class_distance_sq"]) < 1e-10


def test_gate_two_step_json(tmp_path):
    out = tmp_path / "gate2.json"
    rc = main(["gate", "--mode", "two-step", "--delta", "1.0", "--frame", "1", "--out", str(out)])
    assert rc == EXIT_OK
    payload = json.loads(out.read_text())
    u = matrix_from_json(payload["entangling_matrix"])
    assert np.max(np.abs(u - ENTANGLER_FRAME1_DELTA1)) < 1e-3
    assert 1.0 - payload["fidelity"] < 1e-6
    assert payload["recipe"]["t_units"] == "pi/4g"
    assert abs(payload["recipe"]["t_value"] - TABLE1_T2[1.0]) < 1e-4


def test_gate_two_step_rejects_large_detuning(tmp_path, capsys):
    out = tmp_path / "never.json"
    rc = main(["gate", "--mode", "two-step", "--delta", "2.5", "--out", str(out)])
    assert rc == EXIT_DOMAIN
    assert not out.exists()
    assert "delta" in capsys.readouterr().err


def test_trajectory_output(tmp_path):
    out = tmp_path / "traj.csv"
    rc = main(
        ["trajectory", "--delta", "1.0", "--samples", "65", "--out", str(out),
         "--with-resonant-trace"]
    )
    assert rc == EXIT_OK
    header, rows = _rows(out)
    assert header == ["t", "c1", "c2", "c3"]
    assert len(rows) == 65
    assert rows[0] == ["0.000000", "0.000000", "0.000000", "0.000000"]
    final = rows[-1]
    assert abs(float(final[1]) - 1.0) < 2e-3
    assert abs(float(final[2])) < 2e-3
    assert all(abs(float(r[3])) < 1e-6 for r in rows)

    resonant = tmp_path / "traj.resonant.csv"
    assert resonant.exists()
    _, res_rows = _rows(resonant)
    assert len(res_rows) == 65
    assert abs(float(res_rows[-1][1]) - 1.0) < 2e-3


def test_trajectory_rejects_single_sample(tmp_path):
    rc = main(["trajectory", "--delta", "0.5", "--samples", "1",
               "--out", str(tmp_path / "x.csv")])
    assert rc == EXIT_DOMAIN


def test_outputs_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["gate", "--mode", "one-step", "--delta", "1.2", "--out", str(out)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()

    ta, tb = tmp_path / "ta.csv", tmp_path / "tb.csv"
    for out in (ta, tb):
        assert main(["trajectory", "--delta", "0.8", "--samples", "17", "--out", str(out)]) == EXIT_OK
    assert ta.read_bytes() == tb.read_bytes()


def test_outdir_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("CNOTSTEER_OUTDIR", str(tmp_path / "results"))
    assert main(["trajectory", "--delta", "0.5", "--samples", "5", "--out", "t.csv"]) == EXIT_OK
    assert (tmp_path / "results" / "t.csv").exists()


def test_io_failure_exit_code(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    rc = main(["trajectory", "--delta", "0.5", "--samples", "5",
               "--out", str(blocker / "t.csv")])
    assert rc == EXIT_IO
    assert "cannot write" in capsys.readouterr().err


def test_verify_command(capsys):
    assert main(["verify"]) == EXIT_OK
    out = capsys.readouterr().out
    lines = [l for l in out.strip().split("\n") if l.startswith("PASS")]
    assert len(lines) == 7
    assert "all 7 checks passed" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    import cnotsteer.cli as cli
    from cnotsteer.verify import CheckResult

    monkeypatch.setattr(
        cli, "run_checks",
        lambda seed: [CheckResult("stub", False, worst=1.0, tolerance=1e-9)],
    )
    assert main(["verify"]) == 4
    assert "FAIL" in capsys.readouterr().out
