"""Derivative-free maximizers and polynomial series fits.

Every analytic optimum in the package is checked against these routines, so
they share no formulas with the closed forms: a coarse numpy grid scan picks
the best cell, then golden-section search (1-D) or a downhill simplex (2-D)
refines it. Refinement runs in extended precision (mpmath) because a float64
objective is flat to rounding within about 1e-8 of a smooth maximum, which
would cap the attainable control accuracy well above the tolerances we check.

Objectives must accept numpy arrays (for the scan) and mpmath numbers (for
refinement); build them from arithmetic and :mod:`harmonic_otto._xmath`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath
import numpy as np

from .errors import InfeasibleError

WORKING_DPS = 40

_MP = mpmath.MPContext()
_MP.dps = WORKING_DPS
_INVPHI = (_MP.sqrt(5) - 1) / 2
_INVPHI_FLOAT = (math.sqrt(5.0) - 1.0) / 2.0


class InfeasibleProblem(InfeasibleError):
    """The objective is infeasible at every scanned point."""


@dataclass(frozen=True)
class ScalarProblem1D:
    objective: Callable
    lo: float
    hi: float
    tolerance: float = 1e-12
    grid_points: int = 2048
    feasible: Optional[Callable] = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.grid_points < 8:
            raise ValueError("grid_points must be at least 8")


@dataclass(frozen=True)
class ScalarProblem2D:
    objective: Callable
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    tolerance: float = 1e-10
    grid_points: int = 256
    feasible: Optional[Callable] = None
    max_iterations: int = 2000

    def __post_init__(self):
        for lo, hi in (self.x_range, self.y_range):
            if not lo < hi:
                raise ValueError(f"degenerate rectangle side ({lo}, {hi})")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.grid_points < 8:
            raise ValueError("grid_points must be at least 8")


@dataclass(frozen=True)
class Maximum:
    """Result of a numeric maximization. ``x`` is a float or a tuple of floats."""

    x: object
    value: float
    iterations: int
    achieved_tolerance: float
    grid_value: float
    boundary: bool = False
    converged: bool = True
    x_precise: object = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class SeriesFit:
    sample_points: np.ndarray
    coefficients: np.ndarray
    residual: float
    condition: float
    ill_conditioned: bool


def _interior_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (hi - lo) * (np.arange(n) + 1.0) / (n + 1.0)


def _scan(values: np.ndarray, mask: np.ndarray) -> int:
    ok = mask & np.isfinite(values)
    if not ok.any():
        raise InfeasibleProblem("objective is infeasible on the whole scan grid")
    candidates = np.flatnonzero(ok.ravel())
    flat = values.ravel()[candidates]
    # argmax returns the first maximizer, i.e. the smallest control on ties
    return int(candidates[int(np.argmax(flat))])


def _evaluator(objective, feasible):
    """Return key(x) ordering infeasible points below every feasible value."""

    def key(*x):
        if feasible is not None and not feasible(*x):
            return (0, 0)
        v = objective(*x)
        if not _MP.isfinite(v):
            return (0, 0)
        return (1, v)

    return key


def maximize_1d(problem: ScalarProblem1D) -> Maximum:
    """Grid scan followed by golden-section refinement of the best cell."""
    n = problem.grid_points
    xs = _interior_grid(problem.lo, problem.hi, n)
    with np.errstate(all="ignore"):
        values = np.asarray(problem.objective(xs), dtype=float)
        mask = (np.ones(n, dtype=bool) if problem.feasible is None
                else np.asarray(problem.feasible(xs), dtype=bool))
    i = _scan(values, mask)
    grid_value = float(values[i])

    if i == 0:
        a, b = xs[0], xs[1]
    elif i == n - 1:
        a, b = xs[n - 2], xs[n - 1]
    else:
        a, b = xs[i - 1], xs[i + 1]

    key = _evaluator(problem.objective, problem.feasible)
    a, b = _MP.mpf(a), _MP.mpf(b)
    best_x = _MP.mpf(xs[i])
    best_k = key(best_x)

    h = b - a
    n_iter = max(0, int(math.ceil(math.log(problem.tolerance / float(h)) / math.log(_INVPHI_FLOAT))))
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    kc, kd = key(c), key(d)
    iterations = 0
    for _ in range(n_iter):
        iterations += 1
        if kc > kd:
            b, d, kd = d, c, kc
            h = b - a
            c = b - _INVPHI * h
            kc = key(c)
        else:
            a, c, kc = c, d, kd
            h = b - a
            d = a + _INVPHI * h
            kd = key(d)
    for x, k in ((c, kc), (d, kd)):
        if k > best_k:
            best_x, best_k = x, k

    if best_k[0] == 0:
        raise InfeasibleProblem("refinement found no feasible point")
    edge = xs[0] if i == 0 else xs[-1] if i == n - 1 else None
    boundary = bool(edge is not None and abs(float(best_x) - edge) <= problem.tolerance)
    return Maximum(
        x=float(best_x),
        value=float(best_k[1]),
        iterations=iterations,
        achieved_tolerance=float(b - a),
        grid_value=grid_value,
        boundary=boundary,
        x_precise=best_x,
    )


def _simplex_size(pts) -> object:
    x0 = pts[0]
    return max(max(abs(p[0] - x0[0]), abs(p[1] - x0[1])) for p in pts[1:])


def maximize_2d(problem: ScalarProblem2D) -> Maximum:
    """Grid scan followed by a Nelder-Mead downhill simplex from the best cell."""
    n = problem.grid_points
    (xlo, xhi), (ylo, yhi) = problem.x_range, problem.y_range
    gx = _interior_grid(xlo, xhi, n)
    gy = _interior_grid(ylo, yhi, n)
    X, Y = np.meshgrid(gx, gy, indexing="ij")
    with np.errstate(all="ignore"):
        values = np.asarray(problem.objective(X, Y), dtype=float)
        mask = (np.ones(X.shape, dtype=bool) if problem.feasible is None
                else np.asarray(problem.feasible(X, Y), dtype=bool))
    flat = _scan(values, mask)
    i, j = np.unravel_index(flat, X.shape)
    grid_value = float(values[i, j])

    inner = _evaluator(problem.objective, problem.feasible)

    def key(p):
        if not (xlo < p[0] < xhi and ylo < p[1] < yhi):
            return (0, 0)
        return inner(p[0], p[1])

    hx = gx[1] - gx[0]
    hy = gy[1] - gy[0]
    p0 = (_MP.mpf(gx[i]), _MP.mpf(gy[j]))
    p1 = (p0[0] + (hx if i < n - 1 else -hx), p0[1])
    p2 = (p0[0], p0[1] + (hy if j < n - 1 else -hy))
    simplex = [[p, key(p)] for p in (p0, p1, p2)]

    def along(a, b, t):
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

    iterations = 0
    converged = False
    while iterations < problem.max_iterations:
        simplex.sort(key=lambda e: e[1], reverse=True)
        size = _simplex_size([e[0] for e in simplex])
        if size <= problem.tolerance:
            converged = True
            break
        iterations += 1
        (best, kb), (mid, km), (worst, kw) = simplex
        centroid = ((best[0] + mid[0]) / 2, (best[1] + mid[1]) / 2)
        xr = along(centroid, worst, -1)
        kr = key(xr)
        if kr > kb:
            xe = along(centroid, worst, -2)
            ke = key(xe)
            simplex[2] = [xe, ke] if ke > kr else [xr, kr]
        elif kr > km:
            simplex[2] = [xr, kr]
        else:
            if kr > kw:
                xc = along(centroid, worst, -0.5)
            else:
                xc = along(centroid, worst, 0.5)
            kc = key(xc)
            if kc > max(kr, kw):
                simplex[2] = [xc, kc]
            else:
                for e in simplex[1:]:
                    e[0] = along(best, e[0], 0.5)
                    e[1] = key(e[0])
    simplex.sort(key=lambda e: e[1], reverse=True)
    (bx, by), kbest = simplex[0]
    if kbest[0] == 0:
        raise InfeasibleProblem("refinement found no feasible point")
    return Maximum(
        x=(float(bx), float(by)),
        value=float(kbest[1]),
        iterations=iterations,
        achieved_tolerance=float(_simplex_size([e[0] for e in simplex])),
        grid_value=grid_value,
        converged=converged,
        x_precise=(bx, by),
    )


def second_derivative(f: Callable, x, h: float = 1e-5):
    """Central second difference of ``f`` at ``x``, evaluated in working precision."""
    x = _MP.mpf(x)
    return float((f(x + h) - 2 * f(x) + f(x - h)) / (_MP.mpf(h) ** 2))


def hessian_2d(f: Callable, x, y, h: float = 1e-5) -> np.ndarray:
    x, y = _MP.mpf(x), _MP.mpf(y)
    h = _MP.mpf(h)
    fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h ** 2
    fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h ** 2
    fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h ** 2)
    return np.array([[float(fxx), float(fxy)], [float(fxy), float(fyy)]])


def chebyshev_points(scale: float, count: int) -> np.ndarray:
    """Chebyshev nodes mapped into the open interval (0, scale), ascending."""
    k = np.arange(count)
    nodes = np.cos(np.pi * (2 * k + 1) / (2 * count))
    return np.sort(0.5 * scale * (1.0 + nodes))


def fit_series(f: Callable, order: int, scale: float, f0: Optional[float] = None,
               samples: int = 64, max_condition: float = 1e8) -> SeriesFit:
    """Least-squares polynomial fit of ``f`` on (0, scale].

    Coefficients are returned lowest order first. When ``f0`` is given it is
    taken as the analytic value at 0 and fixed as the constant term; otherwise
    the constant is fitted with the rest.
    """
    if not 1 <= order <= 4:
        raise ValueError("order must be between 1 and 4")
    if scale <= 0:
        raise ValueError("scale must be positive")
    xs = chebyshev_points(scale, samples)
    ys = np.array([float(f(float(x))) for x in xs])
    if not np.all(np.isfinite(ys)):
        raise ValueError("f is not finite on the sample points")
    t = xs / scale
    first = 1 if f0 is not None else 0
    powers = np.arange(first, order + 1)
    V = t[:, None] ** powers[None, :]
    rhs = ys - (f0 if f0 is not None else 0.0)
    a, *_ = np.linalg.lstsq(V, rhs, rcond=None)
    cond = float(np.linalg.cond(V))
    coeffs = np.zeros(order + 1)
    if f0 is not None:
        coeffs[0] = f0
    coeffs[first:] = a / scale ** powers
    residual = float(np.max(np.abs(V @ a - rhs)))
    ill = cond > max_condition
    if ill:
        warnings.warn(f"series fit is ill-conditioned (cond = {cond:.3g})", RuntimeWarning)
    return SeriesFit(sample_points=xs, coefficients=coeffs, residual=residual,
                     condition=cond, ill_conditioned=ill)


def mp(value):
    """Convert to the oracle's working-precision number type."""
    return _MP.mpf(value)


