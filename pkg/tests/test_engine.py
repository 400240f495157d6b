import math

import pytest
from hypothesis import given, strategies as st

from harmonic_otto import engine as eng
from harmonic_otto.cycle import BathPair, Protocol, Regime
from harmonic_otto.engine import EngineObjective, Objective
from harmonic_otto.errors import DomainError
from harmonic_otto.result import NUMERIC

eta_c = st.floats(min_value=1e-4, max_value=0.999)


def test_omega_function_examples():
    assert eng.omega_engine(0.0, 0.0, 0.3) == 0.0
    assert eng.omega_engine(1.0, 2.0, 0.5) == 1.0


def test_high_temperature_mof_example():
    r = eng.emof_adiabatic_highT(BathPair.from_eta_c(0.5))
    assert r.controls["z"] == pytest.approx(math.sqrt(0.375), rel=1e-14)
    assert r.figure_of_merit == pytest.approx(1 - math.sqrt(0.375), rel=1e-14)
    assert eng.eta_omega_high(1.0) == 1.0
    assert eng.eta_omega_high(0.0) == 0.0


def test_low_temperature_work_example():
    baths = BathPair(2.0, 1.0)
    r = eng.maximize_work_lowT(baths)
    assert r.controls["omega_1"] == pytest.approx(0.5 + math.log(2), rel=1e-12)
    assert r.controls["omega_2"] == pytest.approx(1 + math.log(2), rel=1e-12)
    assert r.figure_of_merit == pytest.approx(0.2953080545748, rel=1e-12)
    assert r.objective_value == pytest.approx(0.125 / math.e, rel=1e-12)
    w = eng.work_lowT(r.controls["omega_1"], r.controls["omega_2"], baths)
    assert r.objective_value == pytest.approx(float(w), rel=1e-12)


def test_low_temperature_mof_example():
    r = eng.maximize_omega_lowT(BathPair.from_eta_c(0.5))
    assert r.figure_of_merit == pytest.approx(0.388050598, rel=1e-8)


def test_sudden_switch_examples():
    assert eng.work_ss(0.85, 0.5) == pytest.approx((1 - 0.7225) * (0.7225 - 0.5) / (2 * 0.7225), rel=1e-14)
    assert eng.work_ss(math.sqrt(0.5), 0.5) == pytest.approx(0.0, abs=1e-16)
    assert eng.eta_ss(math.sqrt(0.5), 0.5) == pytest.approx(0.0, abs=1e-15)
    assert eng.eta_max_ss(0.5) == pytest.approx(1 / 9, rel=1e-14)
    assert eng.eta_max_ss(1.0) == 0.5
    assert eng.eta_max_ss(0.0) == 0.0
    assert eng.eta_omega_ss(0.5) == pytest.approx(0.1103179860, rel=1e-9)
    assert eng.eta_work_ss(0.5) == pytest.approx(0.108194187554, rel=1e-11)
    assert eng.eta_curzon_ahlborn(0.5) == pytest.approx(1 - math.sqrt(0.5), rel=1e-14)


def test_sudden_switch_stationarity():
    """At the sudden-switch Omega optimum z^4 = tau (2 - eta_max) / 2."""
    for e in (0.1, 0.4, 0.7, 0.95):
        tau = 1 - e
        z = eng.emof_ss(BathPair.from_eta_c(e), NUMERIC).controls["z"]
        assert z ** 4 == pytest.approx(tau * (2 - eng.eta_max_ss(e)) / 2, rel=1e-9)


def test_sudden_switch_work_optimum_is_quarter_power():
    r = eng.maximize_work_ss(BathPair.from_tau(0.3), NUMERIC)
    assert r.controls["z"] == pytest.approx(0.3 ** 0.25, rel=1e-9)


@given(eta_c)
def test_efficiency_orderings(e):
    assert 0 < eng.eta_work_ss(e) < eng.eta_omega_ss(e) <= eng.eta_max_ss(e) <= 0.5
    assert 0 < eng.eta_curzon_ahlborn(e) < eng.eta_omega_high(e) < e
    assert eng.eta_work_low(e) < eng.eta_omega_low(e) < e


@given(st.floats(min_value=0.0, max_value=1.0))
def test_eta_max_ss_bounded(e):
    assert eng.eta_max_ss(e) <= 0.5


@pytest.mark.parametrize("fn", [eng.eta_omega_high, eng.eta_omega_ss, eng.eta_work_low,
                                eng.eta_omega_low, eng.eta_work_ss])
def test_series_branch_is_continuous(fn):
    below, above = fn(eng.SERIES_BELOW * (1 - 1e-9)), fn(eng.SERIES_BELOW * (1 + 1e-9))
    assert below == pytest.approx(above, rel=1e-8)
    assert fn(1e-12) > 0


def test_domain_errors():
    with pytest.raises(DomainError):
        eng.eta_omega_high(1.5)
    with pytest.raises(DomainError):
        eng.work_ss(1.5, 0.5)
    assert eng.work_ss(0.5, 0.5) < 0  # below sqrt(tau) the cycle consumes work
    with pytest.raises(DomainError):
        EngineObjective(Objective.OMEGA, Protocol.ADIABATIC, Regime.EXACT, BathPair(2.0, 1.0))
    with pytest.raises(DomainError):
        EngineObjective(Objective.OMEGA, Protocol.SUDDEN, Regime.LOW, BathPair(2.0, 1.0))


@pytest.mark.parametrize("family", ["emof_ad_high", "emof_ad_low", "emof_ss"])
def test_analytic_matches_oracle_midrange(family):
    from harmonic_otto.verify import ENGINE_FAMILIES
    fn = ENGINE_FAMILIES[family]
    baths = BathPair.from_eta_c(0.37, beta_hot=2.5)
    a, n = fn(baths), fn(baths, NUMERIC)
    assert a.figure_of_merit == pytest.approx(n.figure_of_merit, rel=1e-8)
    assert a.objective_value == pytest.approx(n.objective_value, rel=1e-8)
    assert not n.boundary


def test_low_temperature_controls_scale_with_beta():
    r1 = eng.maximize_omega_lowT(BathPair.from_eta_c(0.4, 1.0))
    r2 = eng.maximize_omega_lowT(BathPair.from_eta_c(0.4, 4.0))
    assert r2.controls["omega_1"] == pytest.approx(r1.controls["omega_1"] / 4, rel=1e-13)
    assert r2.figure_of_merit == pytest.approx(r1.figure_of_merit, rel=1e-14)


def test_loop_curve_geometry():
    loop = eng.loop_curve(0.5)
    assert len(loop.z) == 500
    for k in (0, -1):
        assert abs(loop.eta[k]) <= 1e-10 and abs(loop.work[k]) <= 1e-10
    assert loop.max_eta.eta == pytest.approx(1 / 9, rel=1e-10)
    assert loop.max_work.work == pytest.approx(eng.work_ss(0.5 ** 0.25, 0.5), rel=1e-12)
    assert loop.max_eta.z < loop.mof.z < loop.max_work.z
    # the two extreme points sit close together in efficiency
    assert eng.eta_work_ss(0.5) <= loop.max_work.eta + 1e-12 <= 1 / 9 + 1e-12
    assert loop.max_eta.eta - loop.max_work.eta < 0.01


def test_loop_rejects_bad_input():
    with pytest.raises(DomainError):
        eng.loop_curve(1.2)
    with pytest.raises(DomainError):
        eng.loop_curve(0.5, n_points=2)
