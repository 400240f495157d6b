import math
import warnings

import numpy as np
import pytest

from harmonic_otto._xmath import exp
from harmonic_otto.engine import omega_highT
from harmonic_otto.oracle import (InfeasibleProblem, ScalarProblem1D, ScalarProblem2D,
                                  chebyshev_points, fit_series, hessian_2d, maximize_1d,
                                  maximize_2d, second_derivative)


def test_quadratic_1d():
    m = maximize_1d(ScalarProblem1D(lambda x: -(x - 0.3) ** 2, 0.0, 1.0))
    assert abs(m.x - 0.3) <= 1e-12
    assert not m.boundary
    assert m.achieved_tolerance <= 1e-12


def test_monotone_is_flagged_boundary():
    m = maximize_1d(ScalarProblem1D(lambda x: x, 0.0, 1.0))
    assert m.boundary
    assert m.x > 1.0 - 1e-3


def test_high_temperature_omega_optimum():
    tau = 0.5
    m = maximize_1d(ScalarProblem1D(lambda z: omega_highT(z, tau), tau, 1.0))
    assert m.x == pytest.approx(math.sqrt(tau * (1 + tau) / 2), abs=1e-11)


def test_feasibility_mask_is_respected():
    m = maximize_1d(ScalarProblem1D(lambda x: x, 0.0, 1.0, feasible=lambda x: x < 0.5))
    assert m.x < 0.5
    with pytest.raises(InfeasibleProblem):
        maximize_1d(ScalarProblem1D(lambda x: x, 0.0, 1.0, feasible=lambda x: x > 2.0))


def test_invalid_problems():
    with pytest.raises(ValueError):
        ScalarProblem1D(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValueError):
        ScalarProblem1D(lambda x: x, 0.0, 1.0, tolerance=0.0)
    with pytest.raises(ValueError):
        ScalarProblem2D(lambda x, y: x, (0.0, 1.0), (2.0, 2.0))


def test_quadratic_2d():
    m = maximize_2d(ScalarProblem2D(lambda x, y: -(x - 1) ** 2 - (y - 2) ** 2, (0.0, 3.0), (0.0, 3.0)))
    assert m.converged
    assert m.x[0] == pytest.approx(1.0, abs=1e-8)
    assert m.x[1] == pytest.approx(2.0, abs=1e-8)


def test_low_temperature_work_optimum():
    b1, b2 = 2.0, 1.0

    def work(w1, w2):
        return (w2 - w1) * (exp(-b2 * w2) - exp(-b1 * w1))

    m = maximize_2d(ScalarProblem2D(work, (0.0, 50.0), (0.0, 50.0)))
    eta = 0.5
    l = math.log(1 - eta)
    assert m.x[0] == pytest.approx((1 - eta) * (eta - l) / eta, abs=1e-8)
    assert m.x[1] == pytest.approx((eta - (1 - eta) * l) / eta, abs=1e-8)


def test_curvature_helpers():
    assert second_derivative(lambda x: -3 * x ** 2, 0.4) == pytest.approx(-6.0, rel=1e-8)
    h = hessian_2d(lambda x, y: -x ** 2 - 2 * y ** 2 + x * y, 0.1, 0.2)
    np.testing.assert_allclose(h, [[-2.0, 1.0], [1.0, -4.0]], rtol=1e-8)


def test_chebyshev_points_inside_interval():
    pts = chebyshev_points(0.05, 32)
    assert np.all(pts > 0) and np.all(pts < 0.05)
    assert np.all(np.diff(pts) > 0)


def test_fit_exact_polynomial():
    fit = fit_series(lambda x: x / 2 + x ** 2 / 8, 4, 0.05, f0=0.0)
    np.testing.assert_allclose(fit.coefficients[:3], [0.0, 0.5, 0.125], atol=1e-6)
    assert not fit.ill_conditioned


def test_fit_free_constant():
    fit = fit_series(lambda x: 1.5 - x + 3 * x ** 3, 3, 0.1)
    np.testing.assert_allclose(fit.coefficients, [1.5, -1.0, 0.0, 3.0], atol=1e-9)


def test_fit_warns_when_ill_conditioned():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fit = fit_series(lambda x: x, 4, 0.05, samples=6, max_condition=1.0)
    assert fit.ill_conditioned
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_fit_rejects_bad_order():
    with pytest.raises(ValueError):
        fit_series(lambda x: x, 5, 0.05)
