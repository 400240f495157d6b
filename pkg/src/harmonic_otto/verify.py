"""Analytic-versus-numeric verification suites.

Each suite returns a list of :class:`VerificationRecord`. Equality records
(``relation == "=="``) pass when either the absolute or the relative error is
within tolerance. Ordering records (``"<"``, ``"<="``) pass when
``analytic_value <relation> numeric_value`` holds, and ``"!="`` records pass
when the two values are *not* within tolerance (used to confirm that a
rejected reading of a formula really is wrong).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, asdict

import numpy as np

from . import engine as eng
from . import fridge as frg
from .cycle import BathPair, FrequencyPair, Protocol, Regime, cycle_report
from .engine import EngineObjective, Objective
from .fridge import CoolingRegime, FridgeObjective
from .oracle import ScalarProblem1D, fit_series, hessian_2d, maximize_1d, second_derivative
from .result import NUMERIC

SUITES = ("engine", "fridge", "taylor", "all")
DEFAULT_TOL = 1e-8
GRID_SIZE = 50
ENGINE_GRID = (0.02, 0.98)
SS_FRIDGE_TAU_GRID = (0.52, 0.98)
TAYLOR_TOL = 1e-3
TAYLOR_SCALE = 0.05


@dataclass(frozen=True)
class VerificationRecord:
    case_id: str
    analytic_value: float
    numeric_value: float
    abs_err: float
    rel_err: float
    passed: bool
    tol_abs: float
    tol_rel: float
    relation: str = "=="

    def to_dict(self) -> dict:
        return asdict(self)


def record(case_id, analytic, numeric, tol_rel, tol_abs, relation="==") -> VerificationRecord:
    analytic, numeric = float(analytic), float(numeric)
    abs_err = abs(analytic - numeric)
    scale = abs(analytic)
    rel_err = abs_err / scale if scale > 0 else (0.0 if abs_err == 0 else math.inf)
    close = abs_err <= tol_abs or rel_err <= tol_rel
    if relation == "==":
        ok = close
    elif relation == "!=":
        ok = not close
    elif relation == "<":
        ok = analytic < numeric
    elif relation == "<=":
        ok = analytic <= numeric
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return VerificationRecord(case_id, analytic, numeric, abs_err, rel_err, bool(ok),
                              tol_abs, tol_rel, relation)


def _order(case_id, smaller, larger, strict=True):
    return record(case_id, smaller, larger, 0.0, 0.0, "<" if strict else "<=")


def _compare(prefix, analytic, numeric, tol_rel, tol_abs):
    out = [record(f"{prefix}.figure_of_merit", analytic.figure_of_merit,
                  numeric.figure_of_merit, tol_rel, tol_abs),
           record(f"{prefix}.objective_value", analytic.objective_value,
                  numeric.objective_value, tol_rel, tol_abs)]
    if analytic.method != numeric.method and analytic.controls is not numeric.controls:
        for name, value in analytic.controls.items():
            out.append(record(f"{prefix}.{name}", value, numeric.controls[name], tol_rel, tol_abs))
    return out


def eta_grid(n=GRID_SIZE):
    return np.linspace(*ENGINE_GRID, n)


def ss_fridge_tau_grid(n=GRID_SIZE):
    return np.linspace(*SS_FRIDGE_TAU_GRID, n)


# --- engine ------------------------------------------------------------------------

ENGINE_FAMILIES = {
    "emof_ad_high": eng.emof_adiabatic_highT,
    "emof_ad_low": eng.maximize_omega_lowT,
    "emof_ss": eng.emof_ss,
    "emw_ad_high": eng.maximize_work_highT,
    "emw_ad_low": eng.maximize_work_lowT,
    "emw_ss": eng.maximize_work_ss,
}

_ENGINE_OBJECTIVES = {
    "emof_ad_high": (Objective.OMEGA, Protocol.ADIABATIC, Regime.HIGH),
    "emof_ad_low": (Objective.OMEGA, Protocol.ADIABATIC, Regime.LOW),
    "emof_ss": (Objective.OMEGA, Protocol.SUDDEN, Regime.HIGH),
}


def engine_oracle_records(tol_rel=DEFAULT_TOL, tol_abs=None, families=None, grid=None):
    tol_abs = tol_rel / 100.0 if tol_abs is None else tol_abs
    grid = eta_grid() if grid is None else grid
    families = families or list(ENGINE_FAMILIES)
    out = []
    for i, eta_c in enumerate(grid):
        baths = BathPair.from_eta_c(float(eta_c))
        for name in families:
            fn = ENGINE_FAMILIES[name]
            a, n = fn(baths), fn(baths, NUMERIC)
            out.extend(_compare(f"engine.{name}[{i}]", a, n, tol_rel, tol_abs))
    return out


def engine_property_records(seed=0):
    out = []
    for i, eta_c in enumerate(eta_grid()):
        eta_c = float(eta_c)
        w_ss, o_ss, m_ss = eng.eta_work_ss(eta_c), eng.eta_omega_ss(eta_c), eng.eta_max_ss(eta_c)
        out += [_order(f"engine.bounds[{i}].0<emw_ss", 0.0, w_ss),
                _order(f"engine.bounds[{i}].emw_ss<emof_ss", w_ss, o_ss),
                _order(f"engine.bounds[{i}].emof_ss<=eta_max_ss", o_ss, m_ss, strict=False),
                _order(f"engine.bounds[{i}].eta_max_ss<=1/2", m_ss, 0.5, strict=False)]
        ca, oh = eng.eta_curzon_ahlborn(eta_c), eng.eta_omega_high(eta_c)
        wl, ol = eng.eta_work_low(eta_c), eng.eta_omega_low(eta_c)
        out += [_order(f"engine.bounds[{i}].0<emw_ad_high", 0.0, ca),
                _order(f"engine.bounds[{i}].emw_ad_high<emof_ad_high", ca, oh),
                _order(f"engine.bounds[{i}].emof_ad_high<eta_c", oh, eta_c),
                _order(f"engine.bounds[{i}].emw_ad_low<emof_ad_low", wl, ol),
                _order(f"engine.bounds[{i}].emof_ad_low<eta_c", ol, eta_c)]

    # eta_max_ss never exceeds 1/2
    dense = np.linspace(0.0, 1.0, 10_000)
    top = max(eng.eta_max_ss(float(e)) for e in dense)
    out.append(_order("engine.eta_max_ss.grid_max<=1/2+1e-12", top, 0.5 + 1e-12, strict=False))

    out += second_order_records()
    out += loop_records()
    out += engine_wall_records(seed=seed)
    out += regime_limit_records()
    return out


def second_order_records(grid=None):
    """Curvature of each objective at its analytic optimum must be negative."""
    out = []
    grid = eta_grid(10) if grid is None else grid
    for i, eta_c in enumerate(grid):
        baths = BathPair.from_eta_c(float(eta_c))
        for name, key in _ENGINE_OBJECTIVES.items():
            obj = EngineObjective(*key, baths)
            opt = ENGINE_FAMILIES[name](baths)
            if len(obj.control_names) == 1:
                curv = second_derivative(obj, opt.controls["z"])
            else:
                curv = float(np.max(np.linalg.eigvalsh(
                    hessian_2d(obj, opt.controls["omega_1"], opt.controls["omega_2"]))))
            out.append(_order(f"engine.second_order.{name}[{i}]", curv, 0.0))
    return out


def loop_records(tau=0.5, n_points=500):
    loop = eng.loop_curve(tau, 1.0, n_points)
    prefix = f"engine.loop[tau={tau}]"
    out = []
    for end, k in (("first", 0), ("last", -1)):
        out.append(record(f"{prefix}.{end}.eta", 0.0, loop.eta[k], 0.0, 1e-10))
        out.append(record(f"{prefix}.{end}.work", 0.0, loop.work[k], 0.0, 1e-10))
    out.append(record(f"{prefix}.max_eta=eta_max_ss", eng.eta_max_ss(1.0 - tau),
                      loop.max_eta.eta, 1e-8, 1e-10))
    out.append(_order(f"{prefix}.z_max_eta<z_mof", loop.max_eta.z, loop.mof.z))
    out.append(_order(f"{prefix}.z_mof<z_max_work", loop.mof.z, loop.max_work.z))
    return out


def _wall_offset(rng):
    """Signed distance from a wall, log-uniform in [1e-9, 1e-1]."""
    return rng.choice((-1.0, 1.0)) * 10.0 ** rng.uniform(-9.0, -1.0)


def _misclassified_engine(rng, n, protocol, wall, regime):
    bad = 0
    for _ in range(n):
        tau = rng.uniform(0.05, 0.95)
        w = wall(tau)
        z = w + _wall_offset(rng)
        if not 0.0 < z < 1.0 or abs(z - w) <= 1e-9:
            continue
        rep = cycle_report(BathPair.from_tau(tau), FrequencyPair(z, 1.0), protocol, regime)
        if rep.engine_mode != (z > w):
            bad += 1
    return bad


def engine_wall_records(n=1000, seed=0):
    rng = random.Random(seed)
    return [
        record("engine.wall.adiabatic_high(z>tau)", 0,
               _misclassified_engine(rng, n, Protocol.ADIABATIC, lambda t: t, Regime.HIGH), 0.0, 0.0),
        record("engine.wall.adiabatic_exact(z>tau)", 0,
               _misclassified_engine(rng, n, Protocol.ADIABATIC, lambda t: t, Regime.EXACT), 0.0, 0.0),
        record("engine.wall.ss_high(z>sqrt(tau))", 0,
               _misclassified_engine(rng, n, Protocol.SUDDEN, math.sqrt, Regime.HIGH), 0.0, 0.0),
    ]


def regime_limit_records():
    """Exact cycle reports approach the high-T (beta omega -> 0) and low-T limits."""
    out = []
    cases = [(2.0, 1.0, 0.7, 1.0), (4.0, 1.0, 0.6, 1.0), (1.5, 1.0, 0.9, 1.0)]
    for j, (bc, bh, w1, w2) in enumerate(cases):
        baths = BathPair(bc, bh)
        # high-T: beta omega ~ 1e-3
        s = 1e-3 / (bh * w2)
        fr = FrequencyPair(w1 * s, w2 * s)
        exact = cycle_report(baths, fr, Protocol.ADIABATIC, Regime.EXACT)
        high = cycle_report(baths, fr, Protocol.ADIABATIC, Regime.HIGH)
        for field in ("q_hot", "q_cold", "work_out"):
            out.append(record(f"cycle.high_limit[{j}].{field}", getattr(high, field),
                              getattr(exact, field), 1e-4, 0.0))
        # low-T: beta omega = 30
        s = 30.0 / (bh * w2)
        fr = FrequencyPair(w1 * s, w2 * s)
        exact = cycle_report(baths, fr, Protocol.ADIABATIC, Regime.EXACT)
        low = cycle_report(baths, fr, Protocol.ADIABATIC, Regime.LOW)
        for field in ("q_hot", "q_cold", "work_out"):
            out.append(record(f"cycle.low_limit[{j}].{field}", getattr(low, field),
                              getattr(exact, field), 0.0, 1e-8))
    return out


# --- refrigerator ------------------------------------------------------------------------

FRIDGE_FAMILIES = {
    "cop_mof_ad_high": frg.cop_mof_adiabatic_highT,
    "cop_mof_ad_low": frg.cop_mof_adiabatic_lowT,
    "cop_mof_ss": frg.cop_mof_ss,
}


def fridge_oracle_records(tol_rel=DEFAULT_TOL, tol_abs=None, families=None):
    tol_abs = tol_rel / 100.0 if tol_abs is None else tol_abs
    families = families or list(FRIDGE_FAMILIES)
    out = []
    for name in families:
        grid = ss_fridge_tau_grid() if name == "cop_mof_ss" else 1.0 - eta_grid()
        fn = FRIDGE_FAMILIES[name]
        for i, tau in enumerate(grid):
            baths = BathPair.from_tau(float(tau))
            out.extend(_compare(f"fridge.{name}[{i}]", fn(baths), fn(baths, NUMERIC), tol_rel, tol_abs))
    return out


def eq48_records(tol_rel=DEFAULT_TOL, tol_abs=None):
    """The closed-form optimal-z expression yields z^4, not z; both readings are checked."""
    tol_abs = tol_rel / 100.0 if tol_abs is None else tol_abs
    out = []
    for i, tau in enumerate(ss_fridge_tau_grid(5)):
        baths = BathPair.from_tau(float(tau))
        zc = baths.zeta_c
        closed = frg._ss_optimal_z_squared(zc) ** 2
        z_num = frg.cop_mof_ss(baths, NUMERIC).controls["z"]
        out.append(record(f"fridge.ss_optimal_z.closed_form_is_z^4[{i}]", closed, z_num ** 4,
                          tol_rel, tol_abs))
        out.append(record(f"fridge.ss_optimal_z.closed_form_is_not_z[{i}]", closed, z_num,
                          tol_rel, tol_abs, "!="))
    return out


def fridge_property_records():
    out = []
    for i, tau in enumerate(ss_fridge_tau_grid()):
        tau = float(tau)
        zc = tau / (1.0 - tau)
        chi, high = frg.cop_chi_highT(zc), frg.cop_omega_high(zc)
        ss, zmax = frg.cop_omega_ss(zc), frg.cop_max_ss(zc)
        out += [_order(f"fridge.bounds[{i}].chi<cop_mof_high", chi, high),
                _order(f"fridge.bounds[{i}].cop_mof_high<zeta_c", high, zc),
                _order(f"fridge.bounds[{i}].0<cop_mof_ss", 0.0, ss),
                _order(f"fridge.bounds[{i}].cop_mof_ss<=zeta_max", ss, zmax, strict=False),
                _order(f"fridge.bounds[{i}].zeta_max<zeta_c", zmax, zc)]
        for reg in CoolingRegime:
            out.append(record(f"fridge.cp_closed_vs_composed.{reg.value}[{i}]",
                              frg.cooling_power_at_mof(reg, tau),
                              frg.cooling_power_composed(reg, tau), 0.0, 1e-10))

    # zeta_max is the supremum of the sudden-switch COP over feasible z
    for i, zc in enumerate((1.2, 2.0, 5.0, 20.0)):
        tau = zc / (1.0 + zc)
        m = maximize_1d(ScalarProblem1D(lambda z: frg._cop_ss(z, tau), 0.0, math.sqrt(2 * tau - 1)))
        out.append(record(f"fridge.zeta_max=sup_cop_ss[{i}]", frg.cop_max_ss(zc), m.value, 1e-8, 1e-10))

    peaks = {reg: frg.cp_mof_peak(reg) for reg in CoolingRegime}
    for reg, peak in peaks.items():
        lo, hi = frg.tau_domain(reg)
        out.append(_order(f"fridge.cp_peak.{reg.value}.interior_lo", lo, peak.tau))
        out.append(_order(f"fridge.cp_peak.{reg.value}.interior_hi", peak.tau, hi))
        out.append(record(f"fridge.cp_peak.{reg.value}.not_boundary", 0, int(peak.boundary), 0.0, 0.0))
        edge = 0.5 if reg is CoolingRegime.SS else 1e-12
        edge_value = float(frg._CP_FORMS[reg][0](edge))
        out.append(record(f"fridge.cp_peak.{reg.value}.zero_at_lower_edge", 0.0, edge_value, 0.0, 1e-10))
        out.append(_order(f"fridge.cp_peak.{reg.value}.edge<peak", edge_value, peak.cooling_power))
    out.append(_order("fridge.cp_peak.tau_ad_high<tau_ss",
                      peaks[CoolingRegime.AD_HIGH].tau, peaks[CoolingRegime.SS].tau))
    out += fridge_wall_records()
    return out


def fridge_wall_records(n=1000, seed=1):
    """Sudden-switch refrigeration exists only for tau > 1/2."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        tau = 0.5 + _wall_offset(rng)
        if abs(tau - 0.5) <= 1e-9:
            continue
        baths = BathPair.from_tau(tau)
        if tau > 0.5:
            # deepest point of the cooling window
            z = math.sqrt((2.0 * tau - 1.0) / 2.0)
            rep = cycle_report(baths, FrequencyPair(z, 1.0), Protocol.SUDDEN, Regime.HIGH)
            bad += not rep.fridge_mode
        else:
            z = rng.uniform(1e-6, 1.0 - 1e-6)
            rep = cycle_report(baths, FrequencyPair(z, 1.0), Protocol.SUDDEN, Regime.HIGH)
            bad += rep.fridge_mode
    return [record("fridge.wall.ss(tau>1/2)", 0, bad, 0.0, 0.0)]


# --- Taylor universality --------------------------------------------------------------------

def _asymptotic(cop):
    return lambda x: x * cop(1.0 / x)


def taylor_records(tol=TAYLOR_TOL, scale=TAYLOR_SCALE):
    out = []
    fits = {
        "emw_ad_low": (fit_series(eng.eta_work_low, 4, scale, f0=0.0), (0.5, 1 / 8, 7 / 96)),
        "emw_ad_high": (fit_series(eng.eta_curzon_ahlborn, 4, scale, f0=0.0), (0.5, 1 / 8, 6 / 96)),
        "emof_ad_high": (fit_series(eng.eta_omega_high, 4, scale, f0=0.0), (0.75, 1 / 32, 18 / 768)),
        "emof_ad_low": (fit_series(eng.eta_omega_low, 4, scale, f0=0.0), (0.75, 1 / 32, 19 / 768)),
    }
    for name, (fit, expected) in fits.items():
        for order in (1, 2):
            out.append(record(f"taylor.{name}.c{order}", expected[order - 1],
                              fit.coefficients[order], 0.0, tol))
    for name, cop in (("cop_mof_ad_high", frg.cop_omega_high), ("cop_mof_ad_low", frg.cop_omega_low)):
        fit = fit_series(_asymptotic(cop), 4, scale)
        out.append(record(f"taylor.{name}.slope", 2 / 3, fit.coefficients[0], 0.0, tol))
        out.append(record(f"taylor.{name}.intercept", 1 / 18, fit.coefficients[1], 0.0, tol))

    # model-dependent third terms: the fitted difference must land within half
    # of the expected gap, which pins its sign
    for low, high, gap, label in (("emw_ad_low", "emw_ad_high", 1 / 96, "emw"),
                                  ("emof_ad_low", "emof_ad_high", 1 / 768, "emof")):
        diff = fits[low][0].coefficients[3] - fits[high][0].coefficients[3]
        out.append(record(f"taylor.{label}.third_term_gap", gap, diff, 0.0, gap / 2))
        out.append(_order(f"taylor.{label}.third_term_low>high", 0.0, diff))

    ss = fit_series(eng.eta_work_ss, 4, scale, f0=0.0)
    out.append(record("taylor.emw_ss.c1", 1 / 6, ss.coefficients[1], 0.0, tol))
    return out


def run_suite(suite="all", tol_rel=DEFAULT_TOL):
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    out = []
    if suite in ("engine", "all"):
        out += engine_oracle_records(tol_rel)
        out += engine_property_records()
    if suite in ("fridge", "all"):
        out += fridge_oracle_records(tol_rel)
        out += eq48_records(tol_rel)
        out += fridge_property_records()
    if suite in ("taylor", "all"):
        out += taylor_records()
    return out
