"""Otto engine: Omega-function objectives and their optima.

The Omega function trades useful work against lost work,
``Omega = 2 W - eta_max Q_hot``, where ``eta_max`` is the largest efficiency
the machine can reach under the given driving protocol (the Carnot value for
quasistatic strokes, a tighter bound for sudden switches).

Every ``maximize_*``/``emof_*`` function takes ``method="analytic"`` (closed
forms) or ``method="numeric"`` (the derivative-free oracle applied to the same
objective), so the two routes can be compared point by point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _xmath as xm
from .cycle import BathPair, Protocol, Regime
from .errors import DomainError
from .oracle import ScalarProblem1D, ScalarProblem2D, maximize_1d, maximize_2d
from .result import ANALYTIC, NUMERIC, OptResult, check_method

# below this Carnot efficiency the closed forms are replaced by their series
SERIES_BELOW = 1e-6

# low-temperature searches use omega in (0, OMEGA_CAP / beta_hot]
OMEGA_CAP = 50.0

_SQRT2 = math.sqrt(2.0)


class Objective(str, Enum):
    WORK = "work"
    OMEGA = "omega"


def _check_unit(name, value):
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie in (0, 1), got {value}")


def _check_closed_unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def omega_engine(work, q_hot, eta_max):
    return 2.0 * work - eta_max * q_hot


# --- adiabatic strokes, high temperature -----------------------------------

def work_highT(z, tau, beta_hot=1.0):
    return (z - tau) * (1.0 - z) / (beta_hot * z)


def omega_highT(z, tau, beta_hot=1.0):
    return (z - tau) * (1.0 + tau - 2.0 * z) / (beta_hot * z)


# --- adiabatic strokes, low temperature --------------------------------------

def work_lowT(omega_1, omega_2, baths: BathPair):
    """Work output with coth(x/2) ~ 1 + 2 exp(-x); valid for beta_i omega_i >> 1.

    Same form as the power of Feynman's ratchet with level spacings in place
    of frequencies.
    """
    return (omega_2 - omega_1) * (xm.exp(-baths.beta_hot * omega_2)
                                  - xm.exp(-baths.beta_cold * omega_1))


def q_hot_lowT(omega_1, omega_2, baths: BathPair):
    return omega_2 * (xm.exp(-baths.beta_hot * omega_2) - xm.exp(-baths.beta_cold * omega_1))


def omega_lowT(omega_1, omega_2, baths: BathPair):
    eta_c = baths.eta_c
    gap = xm.exp(-baths.beta_hot * omega_2) - xm.exp(-baths.beta_cold * omega_1)
    return gap * ((2.0 - eta_c) * omega_2 - 2.0 * omega_1)


# --- sudden switch, high temperature ----------------------------------------

def _eta_ss(z, tau):
    u = z * z
    return (u - 1.0) * (u - tau) / (tau + (tau - 2.0) * u)


def _work_ss(z, tau, beta_hot=1.0):
    u = z * z
    return (1.0 - u) * (u - tau) / (2.0 * u * beta_hot)


def _q_hot_ss(z, tau, beta_hot=1.0):
    u = z * z
    return (2.0 * u - tau * (1.0 + u)) / (2.0 * u * beta_hot)


def eta_ss(z, tau):
    _check_unit("z", z)
    _check_unit("tau", tau)
    return _eta_ss(z, tau)


def work_ss(z, tau, beta_hot=1.0):
    """Work per cycle; diverges as z -> 0, positive only for z > sqrt(tau)."""
    _check_unit("z", z)
    _check_unit("tau", tau)
    return _work_ss(z, tau, beta_hot)


def q_hot_ss(z, tau, beta_hot=1.0):
    _check_unit("z", z)
    _check_unit("tau", tau)
    return _q_hot_ss(z, tau, beta_hot)


def omega_ss(z, tau, beta_hot=1.0):
    eta_max = eta_max_ss(1.0 - tau)
    return 2.0 * _work_ss(z, tau, beta_hot) - eta_max * _q_hot_ss(z, tau, beta_hot)


def eta_max_ss(eta_c):
    """Largest efficiency reachable with sudden strokes (never above 1/2)."""
    _check_closed_unit("eta_c", eta_c)
    return (3.0 - eta_c - 2.0 * math.sqrt(2.0 * (1.0 - eta_c))) * eta_c / (1.0 + eta_c) ** 2


# --- closed-form figures of merit -------------------------------------------

def eta_curzon_ahlborn(eta_c):
    _check_closed_unit("eta_c", eta_c)
    # 1 - sqrt(1 - e) without cancellation
    return eta_c / (1.0 + math.sqrt(1.0 - eta_c))


def eta_omega_high(eta_c):
    _check_closed_unit("eta_c", eta_c)
    if eta_c < SERIES_BELOW:
        return 0.75 * eta_c + eta_c ** 2 / 32.0 + 3.0 * eta_c ** 3 / 128.0
    s = (1.0 - eta_c) * (2.0 - eta_c) / 2.0
    return (1.0 - s) / (1.0 + math.sqrt(s))


def eta_work_low(eta_c):
    _check_unit("eta_c", eta_c)
    if eta_c < SERIES_BELOW:
        return eta_c / 2.0 + eta_c ** 2 / 8.0 + 7.0 * eta_c ** 3 / 96.0
    return eta_c ** 2 / (eta_c - (1.0 - eta_c) * math.log1p(-eta_c))


def _k_omega_low(eta_c):
    # ln[(2 - e) / (2 (1 - e))]
    return math.log1p(eta_c / (2.0 * (1.0 - eta_c)))


def eta_omega_low(eta_c):
    _check_unit("eta_c", eta_c)
    if eta_c < SERIES_BELOW:
        return 0.75 * eta_c + eta_c ** 2 / 32.0 + 19.0 * eta_c ** 3 / 768.0
    k = _k_omega_low(eta_c)
    return eta_c * (eta_c + (1.0 - eta_c) * k) / (eta_c + 2.0 * (1.0 - eta_c) * k)


def eta_work_ss(eta_c):
    _check_closed_unit("eta_c", eta_c)
    r = math.sqrt(1.0 - eta_c)
    return (eta_c / (1.0 + r)) / (2.0 + r)


_EMOF_SS_C1 = -87.0 / 4.0 + 31.0 * _SQRT2 / 2.0
_EMOF_SS_C2 = 21289.0 / 32.0 - 3763.0 * _SQRT2 / 8.0


def eta_omega_ss(eta_c):
    _check_closed_unit("eta_c", eta_c)
    if eta_c < SERIES_BELOW:
        return _EMOF_SS_C1 * eta_c + _EMOF_SS_C2 * eta_c ** 2
    e = eta_c
    a = math.sqrt(2.0 * (1.0 - e) * (2.0 + e + 2.0 * e * math.sqrt(2.0 * (1.0 - e)) + 3.0 * e * e))
    return (2.0 + 2.0 * e - a) * (2.0 - 2.0 * e * e - a) / (2.0 * (1.0 + e) ** 2 * (2.0 - 2.0 * e - a))


def reference_efficiencies(eta_c) -> dict:
    """Efficiencies at maximum work used as comparison curves."""
    _check_unit("eta_c", eta_c)
    return {
        "eta_ca": eta_curzon_ahlborn(eta_c),
        "eta_w_low": eta_work_low(eta_c),
        "eta_w_ss": eta_work_ss(eta_c),
    }


# --- objectives handed to the oracle -----------------------------------------

@dataclass(frozen=True)
class EngineObjective:
    """One of the engine objectives, as a function of its control variables.

    High-temperature objectives take the compression ratio ``z``; the
    low-temperature ones take ``(omega_1, omega_2)``. Sudden switching only
    admits closed forms at high temperature.
    """

    kind: Objective
    protocol: Protocol
    regime: Regime
    baths: BathPair

    def __post_init__(self):
        object.__setattr__(self, "kind", Objective(self.kind))
        object.__setattr__(self, "protocol", Protocol.parse(self.protocol))
        object.__setattr__(self, "regime", Regime.parse(self.regime))
        if self.regime is Regime.EXACT:
            raise DomainError("engine objectives exist for the high and low regimes only")
        if self.protocol is Protocol.SUDDEN and self.regime is Regime.LOW:
            raise DomainError("no low-temperature objective for sudden switching")

    @property
    def eta_max(self) -> float:
        if self.protocol is Protocol.ADIABATIC:
            return self.baths.eta_c
        return eta_max_ss(self.baths.eta_c)

    @property
    def control_names(self) -> tuple:
        return ("z",) if self.regime is Regime.HIGH else ("omega_1", "omega_2")

    def __call__(self, *controls):
        tau, bh = self.baths.tau, self.baths.beta_hot
        if self.regime is Regime.LOW:
            w1, w2 = controls
            if self.kind is Objective.WORK:
                return work_lowT(w1, w2, self.baths)
            return omega_lowT(w1, w2, self.baths)
        (z,) = controls
        if self.protocol is Protocol.ADIABATIC:
            return work_highT(z, tau, bh) if self.kind is Objective.WORK else omega_highT(z, tau, bh)
        work = _work_ss(z, tau, bh)
        if self.kind is Objective.WORK:
            return work
        return 2.0 * work - self.eta_max * _q_hot_ss(z, tau, bh)

    def efficiency(self, *controls):
        if self.regime is Regime.LOW:
            w1, w2 = controls
            return 1.0 - w1 / w2
        (z,) = controls
        if self.protocol is Protocol.ADIABATIC:
            return 1.0 - z
        return _eta_ss(z, self.baths.tau)

    def problem(self, tolerance=None):
        """Search problem over the positive-work domain."""
        if self.regime is Regime.LOW:
            cap = OMEGA_CAP / self.baths.beta_hot
            kw = {} if tolerance is None else {"tolerance": tolerance}
            return ScalarProblem2D(self, (0.0, cap), (0.0, cap), **kw)
        lo = self.baths.tau if self.protocol is Protocol.ADIABATIC else math.sqrt(self.baths.tau)
        kw = {} if tolerance is None else {"tolerance": tolerance}
        return ScalarProblem1D(self, lo, 1.0, **kw)


def numeric_optimum(objective, tolerance=None) -> OptResult:
    """Maximize ``objective`` with the oracle and package the result.

    Works for :class:`EngineObjective` and for any object exposing the same
    ``problem``/``efficiency``/``control_names`` surface.
    """
    problem = objective.problem(tolerance)
    if isinstance(problem, ScalarProblem2D):
        m = maximize_2d(problem)
        xs = m.x_precise
    else:
        m = maximize_1d(problem)
        xs = (m.x_precise,)
    merit = objective.efficiency(*xs)
    return OptResult(
        controls={name: float(v) for name, v in zip(objective.control_names, xs)},
        objective_value=m.value,
        figure_of_merit=float(merit),
        method=NUMERIC,
        iterations=m.iterations,
        achieved_tolerance=m.achieved_tolerance,
        boundary=m.boundary,
    )


def _numeric(kind, protocol, regime, baths, tolerance=None):
    return numeric_optimum(EngineObjective(kind, protocol, regime, baths), tolerance)


# --- optima -------------------------------------------------------------------

def maximize_work_highT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Objective.WORK, Protocol.ADIABATIC, Regime.HIGH, baths)
    z = math.sqrt(baths.tau)
    return OptResult({"z": z}, work_highT(z, baths.tau, baths.beta_hot),
                     eta_curzon_ahlborn(baths.eta_c), ANALYTIC)


def emof_adiabatic_highT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Objective.OMEGA, Protocol.ADIABATIC, Regime.HIGH, baths)
    tau = baths.tau
    z = math.sqrt(tau * (1.0 + tau) / 2.0)
    return OptResult({"z": z}, omega_highT(z, tau, baths.beta_hot),
                     eta_omega_high(baths.eta_c), ANALYTIC)


def maximize_work_lowT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Objective.WORK, Protocol.ADIABATIC, Regime.LOW, baths)
    e, bh = baths.eta_c, baths.beta_hot
    lg = math.log1p(-e)
    w1 = (1.0 - e) * (e - lg) / (e * bh)
    w2 = (e - (1.0 - e) * lg) / (e * bh)
    # eta^2 (1 - eta)^((1 - eta)/eta) / (beta_hot e)
    w_star = e * e * math.exp((1.0 - e) / e * lg - 1.0) / bh
    return OptResult({"omega_1": w1, "omega_2": w2}, w_star, eta_work_low(e), ANALYTIC)


def maximize_omega_lowT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Objective.OMEGA, Protocol.ADIABATIC, Regime.LOW, baths)
    e, bc, bh = baths.eta_c, baths.beta_cold, baths.beta_hot
    k = _k_omega_low(e)
    w1 = (e + (2.0 - e) * k) / (bc * e)
    w2 = (e + 2.0 * k * (1.0 - e)) / (bc * e * (1.0 - e))
    # log of [2(1-e)]^(2(1-e)/e) / (2-e)^((2-e)/e), with the ln 2 terms collected
    log_ratio = (-math.log(2.0) + 2.0 * (1.0 - e) / e * math.log1p(-e)
                 - (2.0 - e) / e * math.log1p(-e / 2.0))
    omega_star = e * e * math.exp(log_ratio - 1.0) / bh
    return OptResult({"omega_1": w1, "omega_2": w2}, omega_star, eta_omega_low(e), ANALYTIC)


def maximize_work_ss(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Objective.WORK, Protocol.SUDDEN, Regime.HIGH, baths)
    # dW/d(z^2) = 0 at z^2 = sqrt(tau)
    z = baths.tau ** 0.25
    return OptResult({"z": z}, _work_ss(z, baths.tau, baths.beta_hot),
                     eta_work_ss(baths.eta_c), ANALYTIC)


def emof_ss(baths: BathPair, method=ANALYTIC) -> OptResult:
    """Efficiency at maximum Omega for sudden strokes.

    No closed form is known for the optimal compression ratio, so even the
    analytic result takes ``z`` from the oracle; only the efficiency is
    closed-form.
    """
    numeric = _numeric(Objective.OMEGA, Protocol.SUDDEN, Regime.HIGH, baths)
    if check_method(method) == NUMERIC:
        return numeric
    return OptResult(numeric.controls, numeric.objective_value,
                     eta_omega_ss(baths.eta_c), ANALYTIC)


# --- efficiency/work loop -----------------------------------------------------

@dataclass(frozen=True)
class LoopPoint:
    z: float
    eta: float
    work: float


@dataclass(frozen=True)
class LoopCurve:
    z: np.ndarray
    eta: np.ndarray
    work: np.ndarray
    max_work: LoopPoint
    max_eta: LoopPoint
    mof: LoopPoint


def loop_curve(tau, beta_hot=1.0, n_points=500) -> LoopCurve:
    """Parametric (efficiency, work) curve of the sudden-switch engine.

    Samples z over [sqrt(tau), 1]; both ends give zero work and zero
    efficiency, so the curve closes on itself. The maximum-work,
    maximum-efficiency and maximum-Omega points are located with the oracle.
    """
    _check_unit("tau", tau)
    if n_points < 3:
        raise DomainError("n_points must be at least 3")
    z = np.linspace(math.sqrt(tau), 1.0, n_points)
    eta = _eta_ss(z, tau)
    work = _work_ss(z, tau, beta_hot)
    lo = math.sqrt(tau)

    def point(x):
        return LoopPoint(float(x), float(_eta_ss(x, tau)), float(_work_ss(x, tau, beta_hot)))

    zw = maximize_1d(ScalarProblem1D(lambda x: _work_ss(x, tau, beta_hot), lo, 1.0)).x_precise
    ze = maximize_1d(ScalarProblem1D(lambda x: _eta_ss(x, tau), lo, 1.0)).x_precise
    baths = BathPair.from_tau(tau, beta_hot)
    zo = emof_ss(baths, NUMERIC).controls["z"]
    return LoopCurve(z=z, eta=eta, work=work, max_work=point(zw), max_eta=point(ze), mof=point(zo))
