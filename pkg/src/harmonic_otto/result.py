from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

ANALYTIC = "analytic"
NUMERIC = "numeric"


@dataclass(frozen=True)
class OptResult:
    """An optimal operating point.

    ``controls`` maps control names (``z`` or ``omega_1``/``omega_2``) to
    their optimal values; ``figure_of_merit`` is the efficiency or COP there.
    Convergence fields are only set for numeric results.
    """

    controls: dict
    objective_value: float
    figure_of_merit: float
    method: str
    iterations: Optional[int] = None
    achieved_tolerance: Optional[float] = None
    boundary: bool = False

    def to_dict(self) -> dict:
        out = {"method": self.method}
        out.update(self.controls)
        out["objective_value"] = self.objective_value
        out["figure_of_merit"] = self.figure_of_merit
        out["iterations"] = self.iterations
        out["achieved_tolerance"] = self.achieved_tolerance
        out["boundary"] = self.boundary
        return out


def check_method(method: str) -> str:
    if method not in (ANALYTIC, NUMERIC):
        raise ValueError(f"method must be {ANALYTIC!r} or {NUMERIC!r}, got {method!r}")
    return method
