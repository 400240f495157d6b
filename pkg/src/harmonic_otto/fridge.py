"""Otto refrigerator: COP at maximum Omega and cooling power at that point.

For a refrigerator ``Omega = 2 Q_cold - zeta_max W_in``. With quasistatic
strokes ``zeta_max`` is the Carnot COP; sudden switching lowers it and also
makes cooling impossible unless tau = beta_hot / beta_cold exceeds 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import _xmath as xm
from .cycle import BathPair, Protocol, Regime
from .errors import DomainError, InfeasibleError
from .oracle import ScalarProblem1D, ScalarProblem2D, maximize_1d
from .result import ANALYTIC, NUMERIC, OptResult, check_method
from .engine import numeric_optimum

OMEGA_CAP = 50.0

_NOT_A_FRIDGE = "cannot work as a refrigerator unless tau > 1/2 (zeta_c > 1) with sudden switching"


class CoolingRegime(str, Enum):
    AD_HIGH = "ad_high"
    AD_LOW = "ad_low"
    SS = "ss"

    @classmethod
    def parse(cls, value) -> "CoolingRegime":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "_")
        aliases = {"ad_high": cls.AD_HIGH, "adhight": cls.AD_HIGH, "high": cls.AD_HIGH,
                   "ad_low": cls.AD_LOW, "adlowt": cls.AD_LOW, "low": cls.AD_LOW,
                   "ss": cls.SS}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown cooling regime {value!r}") from None


def cop_adiabatic(z):
    if not 0.0 < z < 1.0:
        raise DomainError(f"z must lie in (0, 1), got {z}")
    return z / (1.0 - z)


def omega_fridge(q_cold, work_in, zeta_max):
    return 2.0 * q_cold - zeta_max * work_in


def cooling_highT(z, tau, beta_hot=1.0):
    return (tau - z) / beta_hot


def omega_fridge_highT(z, tau, beta_hot=1.0):
    return (z - tau) * (tau - z * (2.0 - tau)) / (beta_hot * z * (1.0 - tau))


def cooling_lowT(omega_1, omega_2, baths: BathPair):
    return omega_1 * (xm.exp(-baths.beta_cold * omega_1) - xm.exp(-baths.beta_hot * omega_2))


def omega_fridge_lowT(omega_1, omega_2, baths: BathPair):
    zc = baths.zeta_c
    gap = xm.exp(-baths.beta_cold * omega_1) - xm.exp(-baths.beta_hot * omega_2)
    return ((2.0 + zc) * omega_1 - zc * omega_2) * gap


# --- sudden switch -------------------------------------------------------------

def cop_max_ss(zeta_c):
    """Largest COP with sudden strokes; non-positive means no refrigeration."""
    if not zeta_c > 0:
        raise DomainError(f"zeta_c must be positive, got {zeta_c}")
    return 1.0 + 3.0 * zeta_c - 2.0 * math.sqrt(2.0 * zeta_c * (1.0 + zeta_c))


def _q_cold_ss(z, tau, beta_hot=1.0):
    return (tau - 0.5 * (z * z + 1.0)) / beta_hot


def _work_in_ss(z, tau, beta_hot=1.0):
    u = z * z
    return (u - 1.0) * (u - tau) / (2.0 * beta_hot * u)


def _cop_ss(z, tau):
    u = z * z
    return u * (2.0 * tau - u - 1.0) / ((u - 1.0) * (u - tau))


@dataclass(frozen=True)
class SuddenFridgeState:
    q_cold: float
    work_in: float
    cop: float
    feasible: bool


def fridge_ss_quantities(z, baths: BathPair) -> SuddenFridgeState:
    """Cooling heat, input work and COP of the sudden-switch refrigerator at ``z``.

    ``feasible`` is False when no heat is drawn from the cold bath
    (z^2 >= 2 tau - 1).
    """
    if not 0.0 < z < 1.0:
        raise DomainError(f"z must lie in (0, 1), got {z}")
    tau, bh = baths.tau, baths.beta_hot
    if tau <= 0.5:
        raise InfeasibleError(_NOT_A_FRIDGE)
    q = _q_cold_ss(z, tau, bh)
    return SuddenFridgeState(q_cold=q, work_in=_work_in_ss(z, tau, bh),
                             cop=_cop_ss(z, tau), feasible=q > 0)


def _ss_optimal_z_squared(zeta_c):
    # The stationarity condition of Omega_ss fixes z*^4; the square root of
    # that expression is therefore z*^2 (named A in the COP formula).
    zm = cop_max_ss(zeta_c)
    root = 2.0 * math.sqrt(2.0 * zeta_c * (1.0 + zeta_c))
    z4 = zeta_c * zm / ((1.0 + zeta_c) * (3.0 * (1.0 + zeta_c) - root))
    return math.sqrt(z4)


# --- closed-form COPs ------------------------------------------------------------

def cop_omega_high(zeta_c):
    if not zeta_c > 0:
        raise DomainError(f"zeta_c must be positive, got {zeta_c}")
    return zeta_c / (math.sqrt((1.0 + zeta_c) * (2.0 + zeta_c)) - zeta_c)


def cop_omega_low(zeta_c):
    if not zeta_c > 0:
        raise DomainError(f"zeta_c must be positive, got {zeta_c}")
    k = -math.log1p(1.0 / (1.0 + zeta_c))
    return zeta_c * (1.0 - (1.0 + zeta_c) * k) / (1.0 - 2.0 * (1.0 + zeta_c) * k)


def cop_omega_ss(zeta_c):
    if not zeta_c > 1.0:
        raise InfeasibleError(_NOT_A_FRIDGE)
    a = _ss_optimal_z_squared(zeta_c)
    return a * (1.0 - zeta_c + a * (1.0 + zeta_c)) / ((a - 1.0) * (zeta_c - a * (1.0 + zeta_c)))


def cop_chi_highT(zeta_c):
    """COP at maximum of the COP x cooling-power product; a comparison curve."""
    if not zeta_c > 0:
        raise DomainError(f"zeta_c must be positive, got {zeta_c}")
    return zeta_c / (math.sqrt(1.0 + zeta_c) + 1.0)


# --- objectives ------------------------------------------------------------------

@dataclass(frozen=True)
class FridgeObjective:
    """Omega function of the refrigerator as a function of its controls."""

    protocol: Protocol
    regime: Regime
    baths: BathPair

    def __post_init__(self):
        object.__setattr__(self, "protocol", Protocol.parse(self.protocol))
        object.__setattr__(self, "regime", Regime.parse(self.regime))
        if self.regime is Regime.EXACT:
            raise DomainError("refrigerator objectives exist for the high and low regimes only")
        if self.protocol is Protocol.SUDDEN:
            if self.regime is Regime.LOW:
                raise DomainError("no low-temperature objective for sudden switching")
            if self.baths.tau <= 0.5:
                raise InfeasibleError(_NOT_A_FRIDGE)

    @property
    def zeta_max(self) -> float:
        if self.protocol is Protocol.ADIABATIC:
            return self.baths.zeta_c
        return cop_max_ss(self.baths.zeta_c)

    @property
    def control_names(self) -> tuple:
        return ("z",) if self.regime is Regime.HIGH else ("omega_1", "omega_2")

    def __call__(self, *controls):
        tau, bh = self.baths.tau, self.baths.beta_hot
        if self.regime is Regime.LOW:
            return omega_fridge_lowT(*controls, self.baths)
        (z,) = controls
        if self.protocol is Protocol.ADIABATIC:
            return omega_fridge_highT(z, tau, bh)
        return 2.0 * _q_cold_ss(z, tau, bh) - self.zeta_max * _work_in_ss(z, tau, bh)

    def efficiency(self, *controls):
        """COP at the given controls."""
        if self.regime is Regime.LOW:
            w1, w2 = controls
            return w1 / (w2 - w1)
        (z,) = controls
        if self.protocol is Protocol.ADIABATIC:
            return z / (1.0 - z)
        return _cop_ss(z, self.baths.tau)

    def problem(self, tolerance=None):
        """Search problem over the positive-cooling domain."""
        kw = {} if tolerance is None else {"tolerance": tolerance}
        if self.regime is Regime.LOW:
            b = self.baths
            return ScalarProblem2D(self, (0.0, OMEGA_CAP / b.beta_cold),
                                   (0.0, OMEGA_CAP / b.beta_hot), **kw)
        tau = self.baths.tau
        hi = tau if self.protocol is Protocol.ADIABATIC else math.sqrt(2.0 * tau - 1.0)
        return ScalarProblem1D(self, 0.0, hi, **kw)


def _numeric(protocol, regime, baths):
    return numeric_optimum(FridgeObjective(protocol, regime, baths))


# --- optima ----------------------------------------------------------------------

def cop_mof_adiabatic_highT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Protocol.ADIABATIC, Regime.HIGH, baths)
    tau = baths.tau
    z = tau / math.sqrt(2.0 - tau)
    return OptResult({"z": z}, omega_fridge_highT(z, tau, baths.beta_hot),
                     cop_omega_high(baths.zeta_c), ANALYTIC)


def cop_mof_adiabatic_lowT(baths: BathPair, method=ANALYTIC) -> OptResult:
    if check_method(method) == NUMERIC:
        return _numeric(Protocol.ADIABATIC, Regime.LOW, baths)
    zc = baths.zeta_c
    k = -math.log1p(1.0 / (1.0 + zc))
    w1 = (1.0 - (1.0 + zc) * k) / baths.beta_cold
    w2 = (1.0 - (2.0 + zc) * k) / baths.beta_hot
    return OptResult({"omega_1": w1, "omega_2": w2}, float(omega_fridge_lowT(w1, w2, baths)),
                     cop_omega_low(zc), ANALYTIC)


def cop_mof_ss(baths: BathPair, method=ANALYTIC) -> OptResult:
    if baths.tau <= 0.5:
        raise InfeasibleError(_NOT_A_FRIDGE)
    if check_method(method) == NUMERIC:
        return _numeric(Protocol.SUDDEN, Regime.HIGH, baths)
    zc = baths.zeta_c
    z = math.sqrt(_ss_optimal_z_squared(zc))
    objective = FridgeObjective(Protocol.SUDDEN, Regime.HIGH, baths)
    return OptResult({"z": z}, objective(z), cop_omega_ss(zc), ANALYTIC)


def mof_controls(regime, baths: BathPair) -> OptResult:
    regime = CoolingRegime.parse(regime)
    if regime is CoolingRegime.AD_HIGH:
        return cop_mof_adiabatic_highT(baths)
    if regime is CoolingRegime.AD_LOW:
        return cop_mof_adiabatic_lowT(baths)
    return cop_mof_ss(baths)


# --- cooling power at maximum Omega ---------------------------------------------------

def _cp_ad_high(tau, beta_hot=1.0):
    return (tau - tau / xm.sqrt(2.0 - tau)) / beta_hot


def _cp_ad_low(tau, beta_hot=1.0):
    # (1/(2 - tau))^(1/(1 - tau)) written through exp/log
    lg = -xm.log(2.0 - tau)
    return xm.exp(lg / (1.0 - tau)) * (1.0 - tau - lg) * tau / (math.e * beta_hot * (2.0 - tau))


def _cp_ss(tau, beta_hot=1.0):
    r = xm.sqrt(2.0 * tau)
    return (2.0 * tau - xm.sqrt(tau * (2.0 * tau - 2.0 * r + 1.0) / (3.0 - 2.0 * r)) - 1.0) / (2.0 * beta_hot)


_CP_FORMS = {
    CoolingRegime.AD_HIGH: (_cp_ad_high, 0.0),
    CoolingRegime.AD_LOW: (_cp_ad_low, 0.0),
    CoolingRegime.SS: (_cp_ss, 0.5),
}


def tau_domain(regime) -> tuple[float, float]:
    return (_CP_FORMS[CoolingRegime.parse(regime)][1], 1.0)


def cooling_power_at_mof(regime, tau, beta_hot=1.0):
    """Closed-form heat drawn from the cold bath per cycle at maximum Omega."""
    regime = CoolingRegime.parse(regime)
    form, lo = _CP_FORMS[regime]
    if not lo < tau < 1.0:
        if regime is CoolingRegime.SS and 0.0 < tau <= 0.5:
            raise InfeasibleError(_NOT_A_FRIDGE)
        raise DomainError(f"tau must lie in ({lo}, 1) for {regime.value}, got {tau}")
    return float(form(tau, beta_hot))


def cooling_power_composed(regime, tau, beta_hot=1.0):
    """Cooling heat evaluated at the MOF controls (no cooling-power closed form used)."""
    regime = CoolingRegime.parse(regime)
    baths = BathPair.from_tau(tau, beta_hot)
    opt = mof_controls(regime, baths)
    if regime is CoolingRegime.AD_HIGH:
        return cooling_highT(opt.controls["z"], tau, beta_hot)
    if regime is CoolingRegime.AD_LOW:
        return float(cooling_lowT(opt.controls["omega_1"], opt.controls["omega_2"], baths))
    return fridge_ss_quantities(opt.controls["z"], baths).q_cold


@dataclass(frozen=True)
class CoolingPeak:
    regime: CoolingRegime
    tau: float
    cooling_power: float
    boundary: bool

    def to_dict(self) -> dict:
        return {"regime": self.regime.value, "tau_star": self.tau,
                "cooling_power": self.cooling_power, "boundary": self.boundary}


def cp_mof_peak(regime, beta_hot=1.0) -> CoolingPeak:
    """Temperature ratio that maximizes the cooling power at maximum Omega."""
    regime = CoolingRegime.parse(regime)
    form, lo = _CP_FORMS[regime]
    m = maximize_1d(ScalarProblem1D(lambda t: form(t, beta_hot), lo, 1.0))
    return CoolingPeak(regime, m.x, m.value, m.boundary)
