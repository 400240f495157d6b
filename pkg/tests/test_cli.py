import json

import pytest

from harmonic_otto import cli
from harmonic_otto.sweeps import read_csv


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cycle_engine(capsys):
    code, out, _ = run(capsys, "cycle", "--beta1", "4", "--beta2", "1", "--omega1", "1",
                       "--omega2", "2", "--protocol", "adiabatic")
    rep = json.loads(out)
    assert code == 0
    assert rep["engine_mode"] is True
    assert rep["efficiency"] == pytest.approx(0.5)


def test_cycle_idle(capsys):
    code, out, _ = run(capsys, "cycle", "--beta1", "2", "--omega1", "1", "--omega2", "2")
    rep = json.loads(out)
    assert code == 0 and rep["work_out"] == 0.0
    assert not rep["engine_mode"] and not rep["fridge_mode"]


def test_cycle_invalid_baths(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, _, err = run(capsys, "cycle", "--beta1", "1", "--beta2", "2", "--omega1", "1",
                       "--omega2", "2")
    assert code == 1
    assert "beta_cold must exceed beta_hot" in err
    assert "\x1b" not in err


def test_unknown_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["cycle", "--warp", "9"])
    assert exc.value.code == 1


def test_optimize_both(capsys):
    code, out, _ = run(capsys, "optimize", "engine", "adiabatic", "high", "--eta-c", "0.5",
                       "--method", "both")
    analytic, numeric, disc = json.loads(out)
    assert code == 0
    assert analytic["figure_of_merit"] == pytest.approx(0.387628, abs=1e-6)
    assert numeric["figure_of_merit"] == pytest.approx(0.387628, abs=1e-6)
    assert disc["figure_of_merit"] < 1e-8 and disc["passed"] is True


def test_optimize_fridge_ss(capsys):
    code, out, _ = run(capsys, "optimize", "fridge", "ss", "--zeta-c", "2", "--method", "both")
    rows = json.loads(out)
    assert code == 0
    assert rows[0]["figure_of_merit"] == pytest.approx(0.0631528, abs=1e-7)


def test_optimize_fridge_ss_infeasible(capsys):
    code, _, err = run(capsys, "optimize", "fridge", "ss", "--zeta-c", "0.8")
    assert code == 1
    assert "tau > 1/2" in err


def test_optimize_discrepancy_exit(capsys):
    code, _, err = run(capsys, "optimize", "engine", "ss", "--eta-c", "0.5", "--method", "both",
                       "--tol", "1e-300")
    assert code == 2
    assert "disagree" in err


@pytest.mark.parametrize("argv", [
    ("optimize", "engine", "adiabatic", "exact", "--eta-c", "0.5"),
    ("optimize", "engine", "ss", "low", "--eta-c", "0.5"),
    ("optimize", "fridge", "adiabatic", "--eta-c", "0.5", "--objective", "work"),
    ("optimize", "engine", "adiabatic", "--eta-c", "0.5", "--tau", "0.5"),
    ("sweep",),
    ("sweep", "--quantity", "cp_ss", "--axis", "eta_c"),
    ("cycle", "--beta1", "2"),
])
def test_invalid_input_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"eta-c": 0.5, "beta2": 2.0}))
    code, out, _ = run(capsys, "optimize", "engine", "adiabatic", "--config", str(cfg))
    assert code == 0 and json.loads(out)["beta_hot"] == 2.0
    code, out, _ = run(capsys, "optimize", "engine", "adiabatic", "--config", str(cfg), "--beta2", "1")
    assert json.loads(out)["beta_hot"] == 1.0


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"warp": 9}))
    with pytest.raises(SystemExit) as exc:
        cli.main(["sweep", "--figure", "2", "--config", str(cfg)])
    assert exc.value.code == 1


def test_sweep_to_file_round_trips(capsys, tmp_path):
    path = tmp_path / "fig6.csv"
    code, out, _ = run(capsys, "sweep", "--figure", "6", "--points", "11", "--out", str(path))
    assert code == 0 and out == ""
    table = read_csv(path.read_text())
    assert table.columns == ("tau", "cp_ad_highT", "cp_ad_lowT", "cp_ss")
    assert len(table.rows) == 11


def test_loop_flags_extremes(capsys):
    code, out, _ = run(capsys, "loop", "--tau", "0.5", "--points", "500")
    table = read_csv(out)
    assert code == 0
    assert table.columns == ("z", "eta", "work", "max_work", "max_eta")
    assert len(table.rows) == 502
    *_, max_w, max_e = table.rows
    assert max_w[3] == 1.0 and max_e[4] == 1.0
    assert max_e[1] == pytest.approx(1 / 9, rel=1e-10)
    assert max_w[1] < max_e[1]


def test_cp_mof(capsys):
    code, out, _ = run(capsys, "cp-mof")
    peaks = json.loads(out)
    assert code == 0
    assert [p["regime"] for p in peaks] == ["ad_high", "ad_low", "ss"]
    assert not any(p["boundary"] for p in peaks)


def test_cp_mof_csv_round_trips(capsys):
    _, out, _ = run(capsys, "cp-mof", "ss", "--format", "csv")
    row = read_csv(out).rows[0]
    assert row[0] == "ss"


def test_verify_taylor(capsys):
    code, out, _ = run(capsys, "verify", "taylor")
    assert code == 0
    assert "taylor.emof_ad_high.c1" in out
    assert out.strip().endswith("0 failures")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "taylor", "--format", "json")
    recs = json.loads(out)
    assert code == 0
    assert {"case_id", "analytic_value", "numeric_value", "abs_err", "rel_err", "passed",
            "tol_abs", "tol_rel"} <= set(recs[0])


def test_verify_tight_tolerance_fails_cleanly(capsys):
    code, out, err = run(capsys, "verify", "engine", "--tol", "1e-15")
    assert code == 2
    assert "FAIL" in out
    assert "verification records failed" in err
