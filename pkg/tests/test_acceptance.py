"""Exit criteria. Each test prints one PASS/FAIL line; the lines are also
collected into an "acceptance criteria" section at the end of the pytest run.
"""
import shutil
import subprocess
import sys
import time

import numpy as np
import pytest

from harmonic_otto import engine as eng
from harmonic_otto import verify as ver

pytestmark = pytest.mark.acceptance

ORACLE_TOL = 1e-8
CLOSURE_TOL = 1e-10
TAYLOR_TOL = 1e-3
BOUND_SLACK = 1e-12
CP_TOL = 1e-10
HIGH_LIMIT_TOL = 1e-4
LOW_LIMIT_TOL = 1e-8
ENGINE_BUDGET_S = 10.0
VERIFY_BUDGET_S = 60.0


def _summary(records):
    bad = [r.case_id for r in records if not r.passed]
    return f"{len(records)} checks, {len(bad)} failed" + (f": {bad[:3]}" if bad else "")


def _fom_rel_errors(records):
    return [r.rel_err for r in records if r.case_id.endswith("figure_of_merit")]


def test_c01_engine_oracle_equivalence(criterion):
    start = time.perf_counter()
    recs = ver.engine_oracle_records(ORACLE_TOL, families=["emof_ad_high", "emof_ad_low", "emof_ss"])
    elapsed = time.perf_counter() - start
    worst = max(_fom_rel_errors(recs))
    ok = all(r.passed for r in recs) and worst <= ORACLE_TOL and elapsed < ENGINE_BUDGET_S
    criterion(1, "engine EMOF analytic vs numeric, 50 eta_c x 3 cases", ok,
              f"{_summary(recs)}; worst eta rel_err {worst:.2e}; {elapsed:.2f} s")


def test_c02_fridge_oracle_equivalence(criterion):
    recs = ver.fridge_oracle_records(ORACLE_TOL) + ver.eq48_records(ORACLE_TOL)
    worst = max(_fom_rel_errors(recs))
    ok = all(r.passed for r in recs) and worst <= ORACLE_TOL
    criterion(2, "refrigerator COP at max Omega analytic vs numeric", ok,
              f"{_summary(recs)}; worst COP rel_err {worst:.2e}")


def test_c03_eta_max_bound(criterion):
    grid = np.linspace(0.0, 1.0, 10_002)[1:-1]
    values = np.array([eng.eta_max_ss(float(e)) for e in grid])
    top = float(values.max())
    ok = top <= 0.5 + BOUND_SLACK and bool(np.all(values < 0.5)) and eng.eta_max_ss(1.0) == 0.5
    criterion(3, "sudden-switch maximum efficiency <= 1/2", ok,
              f"max over 10^4 interior points {top:.12f}; value at eta_c=1 {eng.eta_max_ss(1.0)}")


def test_c04_taylor_universality(criterion):
    recs = [r for r in ver.taylor_records(TAYLOR_TOL)
            if r.case_id.rsplit(".", 1)[1] in ("c1", "c2", "slope", "intercept")
            and "emw_ss" not in r.case_id]
    worst = max(r.abs_err for r in recs)
    ok = len(recs) == 12 and all(r.passed for r in recs) and worst <= TAYLOR_TOL
    criterion(4, "leading Taylor coefficients (1/2,1/8) (3/4,1/32) (2/3,1/18)", ok,
              f"{_summary(recs)}; worst abs_err {worst:.2e}")


def test_c05_third_term_orderings(criterion):
    recs = [r for r in ver.taylor_records(TAYLOR_TOL) if "third_term" in r.case_id]
    gaps = {r.case_id: r.numeric_value for r in recs if r.case_id.endswith("gap")}
    ok = len(recs) == 4 and all(r.passed for r in recs) and all(g > 0 for g in gaps.values())
    criterion(5, "third coefficients: low-T exceeds high-T for EMW and EMOF", ok,
              "; ".join(f"{k} {v:.5f}" for k, v in gaps.items()))


def test_c06_feasibility_walls(criterion):
    recs = ver.engine_wall_records(n=1000) + ver.fridge_wall_records(n=1000)
    ok = all(r.passed and r.numeric_value == 0 for r in recs)
    criterion(6, "feasibility walls z>tau, z>sqrt(tau), tau>1/2", ok,
              ", ".join(f"{r.case_id.split('.', 2)[2]}: {int(r.numeric_value)} misclassified"
                        for r in recs))


def test_c07_loop_geometry(criterion):
    loop = eng.loop_curve(0.5, 1.0, 500)
    closure = max(abs(loop.eta[0]), abs(loop.work[0]), abs(loop.eta[-1]), abs(loop.work[-1]))
    eta_err = abs(loop.max_eta.eta - eng.eta_max_ss(0.5)) / eng.eta_max_ss(0.5)
    # the MOF point lies where W falls while eta rises, i.e. between the two extremes in z
    slope = np.gradient(loop.work, loop.eta)
    k = int(np.searchsorted(loop.z, loop.mof.z))
    ok = (closure <= CLOSURE_TOL and eta_err <= ORACLE_TOL
          and loop.max_eta.z != loop.max_work.z
          and loop.max_eta.z < loop.mof.z < loop.max_work.z and slope[k] < 0
          and all(r.passed for r in ver.loop_records(0.5)))
    criterion(7, "work/efficiency loop at tau=0.5", ok,
              f"closure {closure:.1e}; max-eta rel_err {eta_err:.1e}; z(max eta) {loop.max_eta.z:.6f} "
              f"< z(MOF) {loop.mof.z:.6f} < z(max W) {loop.max_work.z:.6f}")


def test_c08_cooling_power_peaks(criterion):
    recs = [r for r in ver.fridge_property_records()
            if r.case_id.startswith(("fridge.cp_peak", "fridge.cp_closed_vs_composed"))]
    worst = max(r.abs_err for r in recs if "closed_vs_composed" in r.case_id)
    ok = all(r.passed for r in recs) and worst <= CP_TOL
    peaks = [r for r in recs if r.case_id.endswith("interior_lo")]
    criterion(8, "interior cooling-power peaks; closed form vs composition", ok,
              f"{_summary(recs)}; worst composition gap {worst:.1e}; "
              + ", ".join(f"{r.case_id.split('.')[2]} tau*={r.numeric_value:.6f}" for r in peaks))


def test_c09_regime_limits(criterion):
    recs = ver.regime_limit_records()
    high = [r for r in recs if "high_limit" in r.case_id]
    low = [r for r in recs if "low_limit" in r.case_id]
    ok = (all(r.passed for r in recs) and max(r.rel_err for r in high) <= HIGH_LIMIT_TOL
          and max(r.abs_err for r in low) <= LOW_LIMIT_TOL)
    criterion(9, "exact report tends to high-T and low-T reports", ok,
              f"high-T worst rel_err {max(r.rel_err for r in high):.1e}; "
              f"low-T worst abs_err {max(r.abs_err for r in low):.1e}")


def _otto():
    exe = shutil.which("otto")
    return [exe] if exe else [sys.executable, "-m", "harmonic_otto.cli"]


def test_c10_cli_verify_and_deterministic_sweeps(criterion, tmp_path):
    start = time.perf_counter()
    proc = subprocess.run(_otto() + ["verify", "all"], capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    identical = []
    for fig in ("2", "4", "6"):
        outs = []
        for run in range(2):
            path = tmp_path / f"fig{fig}_{run}.csv"
            subprocess.run(_otto() + ["sweep", "--figure", fig, "--out", str(path)], check=True)
            outs.append(path.read_bytes())
        identical.append(outs[0] == outs[1] and len(outs[0]) > 0)
    last = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    ok = proc.returncode == 0 and elapsed < VERIFY_BUDGET_S and all(identical)
    criterion(10, "otto verify all exits 0 in time; sweeps byte-identical", ok,
              f"exit {proc.returncode} in {elapsed:.1f} s ({last}); "
              f"fig 2/4/6 identical {identical}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
