"""Energetics of the four-stroke harmonic-oscillator Otto cycle.

Units: hbar = k_B = 1, so frequencies are energies and inverse temperatures
are reciprocal energies. Corners are A (thermal at the cold bath, frequency
omega_1), B (after compression to omega_2), C (thermal at the hot bath) and
D (after expansion back to omega_1). All fluxes into the oscillator are
positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Optional

from .errors import DomainError

# heats smaller than this are treated as zero when classifying the cycle
MODE_TOL = 1e-12

_SERIES_BELOW = 1e-4


class Protocol(str, Enum):
    ADIABATIC = "adiabatic"
    SUDDEN = "ss"

    @classmethod
    def parse(cls, value) -> "Protocol":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "_")
        aliases = {"adiabatic": cls.ADIABATIC, "ad": cls.ADIABATIC,
                   "ss": cls.SUDDEN, "sudden": cls.SUDDEN, "sudden_switch": cls.SUDDEN}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown protocol {value!r} (expected adiabatic or ss)") from None


class Regime(str, Enum):
    EXACT = "exact"
    HIGH = "high"
    LOW = "low"

    @classmethod
    def parse(cls, value) -> "Regime":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        aliases = {"exact": cls.EXACT, "high": cls.HIGH, "hight": cls.HIGH,
                   "low": cls.LOW, "lowt": cls.LOW}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown regime {value!r} (expected exact, high or low)") from None


@dataclass(frozen=True)
class BathPair:
    """Inverse temperatures of the cold (``beta_cold``) and hot (``beta_hot``) reservoirs."""

    beta_cold: float
    beta_hot: float

    def __post_init__(self):
        if not (math.isfinite(self.beta_cold) and math.isfinite(self.beta_hot)):
            raise DomainError("inverse temperatures must be finite")
        if self.beta_hot <= 0:
            raise DomainError("beta_hot must be positive")
        if self.beta_cold <= self.beta_hot:
            raise DomainError("beta_cold must exceed beta_hot")

    @classmethod
    def from_tau(cls, tau: float, beta_hot: float = 1.0) -> "BathPair":
        if not 0.0 < tau < 1.0:
            raise DomainError(f"tau must lie in (0, 1), got {tau}")
        return cls(beta_cold=beta_hot / tau, beta_hot=beta_hot)

    @classmethod
    def from_eta_c(cls, eta_c: float, beta_hot: float = 1.0) -> "BathPair":
        if not 0.0 < eta_c < 1.0:
            raise DomainError(f"eta_c must lie in (0, 1), got {eta_c}")
        return cls.from_tau(1.0 - eta_c, beta_hot)

    @classmethod
    def from_zeta_c(cls, zeta_c: float, beta_hot: float = 1.0) -> "BathPair":
        if not zeta_c > 0.0:
            raise DomainError(f"zeta_c must be positive, got {zeta_c}")
        return cls.from_tau(zeta_c / (1.0 + zeta_c), beta_hot)

    @property
    def tau(self) -> float:
        return self.beta_hot / self.beta_cold

    @property
    def eta_c(self) -> float:
        return 1.0 - self.tau

    @property
    def zeta_c(self) -> float:
        # beta_hot / (beta_cold - beta_hot) avoids the 1 - tau cancellation
        return self.beta_hot / (self.beta_cold - self.beta_hot)


@dataclass(frozen=True)
class FrequencyPair:
    omega_1: float
    omega_2: float

    def __post_init__(self):
        if not (self.omega_1 > 0 and self.omega_2 > 0):
            raise DomainError("omega_1 and omega_2 must be positive")
        if not (math.isfinite(self.omega_1) and math.isfinite(self.omega_2)):
            raise DomainError("frequencies must be finite")

    @property
    def z(self) -> float:
        """Compression ratio omega_1 / omega_2."""
        return self.omega_1 / self.omega_2


@dataclass(frozen=True)
class CycleEnergies:
    h_a: float
    h_b: float
    h_c: float
    h_d: float


@dataclass(frozen=True)
class CycleReport:
    q_hot: float
    q_cold: float
    work_out: float
    work_in: float
    efficiency: Optional[float]
    cop: Optional[float]
    engine_mode: bool
    fridge_mode: bool

    def to_dict(self) -> dict:
        return asdict(self)


def adiabaticity(protocol, freqs: FrequencyPair) -> float:
    """Dimensionless adiabaticity parameter lambda (1 for quasistatic strokes)."""
    protocol = Protocol.parse(protocol)
    if protocol is Protocol.ADIABATIC:
        return 1.0
    w1, w2 = freqs.omega_1, freqs.omega_2
    # (w1^2 + w2^2) / (2 w1 w2) written as 1 + (w1 - w2)^2 / (2 w1 w2): exactly >= 1
    return 1.0 + (w1 - w2) ** 2 / (2.0 * w1 * w2)


def coth_half(x: float) -> float:
    """coth(x/2) for x > 0 without overflow for large x."""
    if x <= 0:
        raise DomainError("coth_half needs a positive argument")
    if x < _SERIES_BELOW:
        return 2.0 / x + x / 6.0 - x ** 3 / 360.0
    t = math.exp(-x)
    return (1.0 + t) / -math.expm1(-x)


def _factor(x: float, regime: Regime) -> float:
    if regime is Regime.EXACT:
        return coth_half(x)
    if regime is Regime.HIGH:
        return 2.0 / x
    return 1.0 + 2.0 * math.exp(-x)


def regime_approx(baths: BathPair, freqs: FrequencyPair, regime) -> tuple[float, float]:
    """coth(beta_i omega_i / 2) for the cold and hot reservoir under ``regime``.

    HIGH uses 2/(beta omega), LOW uses 1 + 2 exp(-beta omega), EXACT the
    full function. The regime is never inferred from the arguments.
    """
    regime = Regime.parse(regime)
    x_cold = baths.beta_cold * freqs.omega_1
    x_hot = baths.beta_hot * freqs.omega_2
    return _factor(x_cold, regime), _factor(x_hot, regime)


def corner_energies(baths: BathPair, freqs: FrequencyPair, protocol,
                    regime=Regime.EXACT) -> CycleEnergies:
    lam = adiabaticity(protocol, freqs)
    c_cold, c_hot = regime_approx(baths, freqs, regime)
    w1, w2 = freqs.omega_1, freqs.omega_2
    return CycleEnergies(
        h_a=0.5 * w1 * c_cold,
        h_b=0.5 * w2 * lam * c_cold,
        h_c=0.5 * w2 * c_hot,
        h_d=0.5 * w1 * lam * c_hot,
    )


def heats(baths: BathPair, freqs: FrequencyPair, protocol,
          regime=Regime.EXACT) -> tuple[float, float]:
    """Heat taken from the hot bath (Q2) and from the cold bath (Q4)."""
    lam = adiabaticity(protocol, freqs)
    c_cold, c_hot = regime_approx(baths, freqs, regime)
    q2 = 0.5 * freqs.omega_2 * (c_hot - lam * c_cold)
    q4 = 0.5 * freqs.omega_1 * (c_cold - lam * c_hot)
    return q2, q4


def cycle_report(baths: BathPair, freqs: FrequencyPair, protocol,
                 regime=Regime.EXACT) -> CycleReport:
    q2, q4 = heats(baths, freqs, protocol, regime)
    work = q2 + q4
    work_in = -work
    engine = work > MODE_TOL and q2 > MODE_TOL
    fridge = q4 > MODE_TOL and q2 < -MODE_TOL and work_in > MODE_TOL
    return CycleReport(
        q_hot=q2,
        q_cold=q4,
        work_out=work,
        work_in=work_in,
        efficiency=work / q2 if engine else None,
        cop=q4 / work_in if fridge else None,
        engine_mode=engine,
        fridge_mode=fridge,
    )
