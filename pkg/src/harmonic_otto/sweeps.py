"""Parameter sweeps for figure data and their CSV/JSON serialization.

A sweep evaluates closed-form quantities on an evenly spaced axis. CSV cells
are written with 17 significant digits so that :func:`read_csv` recovers the
exact float64 values.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import engine as eng
from . import fridge as frg
from .errors import DomainError, NumericFailure

AXES = ("eta_c", "zeta_c", "tau")
DEFAULT_POINTS = 200
DEFAULT_RANGES = {
    "eta_c": (0.01, 0.99),
    "zeta_c": (1.05, 20.0),
    "tau": (0.01, 0.99),
}
SS_TAU_RANGE = (0.51, 0.99)


@dataclass(frozen=True)
class Quantity:
    name: str
    axis: str
    fn: Callable[[float, float], float]
    domain: tuple[float, float]
    description: str


def _q(name, axis, fn, domain, description):
    return name, Quantity(name, axis, fn, domain, description)


QUANTITIES = dict([
    # engine efficiencies against the Carnot efficiency
    _q("emof_ad_highT", "eta_c", lambda x, b: eng.eta_omega_high(x), (0.0, 1.0),
       "efficiency at max Omega, adiabatic, high T"),
    _q("emof_ad_lowT", "eta_c", lambda x, b: eng.eta_omega_low(x), (0.0, 1.0),
       "efficiency at max Omega, adiabatic, low T"),
    _q("emof_ss", "eta_c", lambda x, b: eng.eta_omega_ss(x), (0.0, 1.0),
       "efficiency at max Omega, sudden switch"),
    _q("emw_ad_highT", "eta_c", lambda x, b: eng.eta_curzon_ahlborn(x), (0.0, 1.0),
       "efficiency at max work, adiabatic, high T"),
    _q("emw_ad_lowT", "eta_c", lambda x, b: eng.eta_work_low(x), (0.0, 1.0),
       "efficiency at max work, adiabatic, low T"),
    _q("emw_ss", "eta_c", lambda x, b: eng.eta_work_ss(x), (0.0, 1.0),
       "efficiency at max work, sudden switch"),
    _q("delta", "eta_c", lambda x, b: eng.eta_omega_ss(x) - eng.eta_work_ss(x), (0.0, 1.0),
       "emof_ss minus emw_ss"),
    _q("eta_max_ss", "eta_c", lambda x, b: eng.eta_max_ss(x), (0.0, 1.0),
       "largest sudden-switch efficiency"),
    # refrigerator COPs against the Carnot COP
    _q("cop_mof_highT", "zeta_c", lambda x, b: frg.cop_omega_high(x), (0.0, math.inf),
       "COP at max Omega, adiabatic, high T"),
    _q("cop_mof_lowT", "zeta_c", lambda x, b: frg.cop_omega_low(x), (0.0, math.inf),
       "COP at max Omega, adiabatic, low T"),
    _q("cop_mof_ss", "zeta_c", lambda x, b: frg.cop_omega_ss(x), (1.0, math.inf),
       "COP at max Omega, sudden switch"),
    _q("cop_chi_highT", "zeta_c", lambda x, b: frg.cop_chi_highT(x), (0.0, math.inf),
       "COP at max chi, adiabatic, high T"),
    _q("cop_max_ss", "zeta_c", lambda x, b: frg.cop_max_ss(x), (1.0, math.inf),
       "largest sudden-switch COP"),
    # cooling power at max Omega against tau
    _q("cp_ad_highT", "tau", lambda x, b: frg.cooling_power_at_mof("ad_high", x, b), (0.0, 1.0),
       "cooling power at max Omega, adiabatic, high T"),
    _q("cp_ad_lowT", "tau", lambda x, b: frg.cooling_power_at_mof("ad_low", x, b), (0.0, 1.0),
       "cooling power at max Omega, adiabatic, low T"),
    _q("cp_ss", "tau", lambda x, b: frg.cooling_power_at_mof("ss", x, b), (0.5, 1.0),
       "cooling power at max Omega, sudden switch"),
])

ALIASES = {
    "emof_adiabatic_highT": "emof_ad_highT",
    "emof_adiabatic_lowT": "emof_ad_lowT",
    "cop_mof_ad_highT": "cop_mof_highT",
    "cop_mof_ad_lowT": "cop_mof_lowT",
}

FIGURES = {
    "2": ("eta_c", ("emof_ad_highT", "emof_ad_lowT", "emof_ss", "emw_ss", "delta")),
    "4": ("zeta_c", ("cop_mof_highT", "cop_mof_lowT", "cop_mof_ss", "cop_chi_highT")),
    "6": ("tau", ("cp_ad_highT", "cp_ad_lowT", "cp_ss")),
}


def resolve(name: str) -> Quantity:
    name = ALIASES.get(name, name)
    try:
        return QUANTITIES[name]
    except KeyError:
        raise DomainError(f"unknown quantity {name!r}; known: {', '.join(QUANTITIES)}") from None


def valid_pairs() -> str:
    return "; ".join(f"{q.axis}: {q.name}" for q in QUANTITIES.values())


def default_range(axis: str, quantities) -> tuple[float, float]:
    if axis == "tau" and any(resolve(q).domain[0] >= 0.5 for q in quantities):
        return SS_TAU_RANGE
    return DEFAULT_RANGES[axis]


@dataclass(frozen=True)
class SweepSpec:
    quantities: tuple
    axis: str
    start: float
    stop: float
    count: int = DEFAULT_POINTS
    beta_hot: float = 1.0

    def __post_init__(self):
        if self.axis not in AXES:
            raise DomainError(f"axis must be one of {', '.join(AXES)}, got {self.axis!r}")
        if not self.quantities:
            raise DomainError("at least one quantity is required")
        names = tuple(resolve(q).name for q in self.quantities)
        object.__setattr__(self, "quantities", names)
        wrong = [q for q in names if QUANTITIES[q].axis != self.axis]
        if wrong:
            raise DomainError(f"quantity {', '.join(wrong)} does not live on axis {self.axis}; "
                              f"valid pairs are {valid_pairs()}")
        if self.count < 2:
            raise DomainError("count must be at least 2")
        if not self.start < self.stop:
            raise DomainError(f"start must be below stop, got {self.start} >= {self.stop}")
        if not self.beta_hot > 0:
            raise DomainError("beta_hot must be positive")
        for q in names:
            lo, hi = QUANTITIES[q].domain
            if not lo < self.start < self.stop < hi:
                raise DomainError(f"range [{self.start}, {self.stop}] leaves the domain "
                                  f"({lo}, {hi}) of {q}")

    @classmethod
    def for_figure(cls, figure: str, count=DEFAULT_POINTS, start=None, stop=None, beta_hot=1.0):
        if figure not in FIGURES:
            raise DomainError(f"figure must be one of {', '.join(FIGURES)}, got {figure!r}")
        axis, quantities = FIGURES[figure]
        lo, hi = default_range(axis, quantities)
        return cls(quantities, axis, lo if start is None else start,
                   hi if stop is None else stop, count, beta_hot)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    rows: list = field(default_factory=list)

    def column(self, name) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows])


def run_sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate every quantity on the sweep grid; non-finite values abort."""
    rows = []
    for x in spec.grid():
        x = float(x)
        row = [x]
        for name in spec.quantities:
            v = float(QUANTITIES[name].fn(x, spec.beta_hot))
            if not math.isfinite(v):
                raise NumericFailure(f"{name} is not finite at {spec.axis}={x!r}")
            row.append(v)
        rows.append(tuple(row))
    return SweepTable((spec.axis,) + spec.quantities, rows)


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def to_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def to_json(table: SweepTable) -> str:
    return json.dumps([dict(zip(table.columns, row)) for row in table.rows], indent=1) + "\n"


def read_csv(text: str) -> SweepTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DomainError("empty CSV") from None
    rows = [tuple(_parse(c) for c in r) for r in reader if r]
    return SweepTable(tuple(header), rows)


def _parse(cell: str):
    try:
        return float(cell)
    except ValueError:
        return cell


def render(table: SweepTable, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    raise DomainError(f"format must be csv or json, got {fmt!r}")
