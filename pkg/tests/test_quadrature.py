"""Tanh-sinh quadrature against closed forms and an mpmath oracle, and the
square-root sheet tracker on paths that wind around roots."""

import mpmath
import numpy as np
import pytest

import kleinian2 as k2
from kleinian2.integration import Line, SheetPath, continue_sqrt, lookup_sqrt
from kleinian2.quadrature import integrate_01

from conftest import G6_COEFFS


def _scalar(fn):
    def g(u, d0, d1):
        return np.asarray(fn(u, d0, d1), dtype=complex)[:, None]
    return g


def test_smooth_integrand():
    val, err = integrate_01(_scalar(lambda u, d0, d1: np.exp(u)))
    assert abs(val[0] - (np.e - 1)) < 1e-13
    assert err < 1e-12


def test_inverse_sqrt_endpoint_left():
    val, _ = integrate_01(_scalar(lambda u, d0, d1: 1.0 / np.sqrt(d0)))
    assert abs(val[0] - 2.0) < 1e-12


def test_inverse_sqrt_both_endpoints():
    val, _ = integrate_01(_scalar(lambda u, d0, d1: 1.0 / np.sqrt(d0 * d1)))
    assert abs(val[0] - np.pi) < 1e-12


def test_log_endpoint():
    val, _ = integrate_01(_scalar(lambda u, d0, d1: np.log(d0)))
    assert abs(val[0] + 1.0) < 1e-12


def test_vector_integrand_and_mpmath_oracle():
    """Complex oscillatory integrand with a left endpoint singularity."""
    val, _ = integrate_01(
        lambda u, d0, d1: np.stack(
            [np.exp(2j * np.pi * u) / np.sqrt(d0), u ** 2 + 0j], axis=1))
    with mpmath.workdps(30):
        ref = mpmath.quad(
            lambda t: mpmath.exp(2j * mpmath.pi * t) / mpmath.sqrt(t), [0, 1])
    assert abs(val[0] - complex(ref)) < 1e-12
    assert abs(val[1] - 1.0 / 3.0) < 1e-13


def test_unreachable_tolerance_raises():
    rng = np.random.default_rng(3)
    noise = rng.normal(size=10 ** 6)

    def g(u, d0, d1):
        # white noise indexed by node position defeats refinement
        idx = (u * (len(noise) - 1)).astype(int)
        return noise[idx][:, None] + 0j

    with pytest.raises(k2.QuadratureError):
        integrate_01(g, tol=1e-13)


def test_continue_sqrt_closed_loop_winding():
    """A loop encircling one root of f an odd number of times must come back
    on the other sheet, even though h(1) == h(0) exactly."""
    f = k2.validate_polynomial(G6_COEFFS)
    center = 1.0  # a root of x^6 - 1

    def h_loop(u):
        return f(center + 0.3 * np.exp(2j * np.pi * u))

    us, ss = continue_sqrt(h_loop)
    assert abs(ss[-1] + ss[0]) < 1e-12 * abs(ss[0])

    def h_null(u):
        # same circle around a point with no enclosed root
        return f(3.0 + 0.3 * np.exp(2j * np.pi * u))

    us, ss = continue_sqrt(h_null)
    assert abs(ss[-1] - ss[0]) < 1e-12 * abs(ss[0])


def test_continue_sqrt_double_winding_returns():
    f = k2.validate_polynomial(G6_COEFFS)

    def h(u):
        return f(1.0 + 0.3 * np.exp(4j * np.pi * u))

    us, ss = continue_sqrt(h)
    assert abs(ss[-1] - ss[0]) < 1e-12 * abs(ss[0])


def test_continue_sqrt_seed_selects_branch():
    def h(u):
        return 4.0 + 0j + 0.0 * u

    _, ss = continue_sqrt(h, seed=-2.0)
    assert ss[0] == -2.0 and ss[-1] == -2.0
    with pytest.raises(k2.SheetTrackingError):
        continue_sqrt(h, seed=1.0)


def test_lookup_sqrt_interpolates_branch():
    def h(u):
        return np.exp(4j * np.pi * u)  # sqrt(h) = exp(2 pi i u) winds once

    us, ss = continue_sqrt(h)
    u_test = np.linspace(0.01, 0.99, 37)
    got = lookup_sqrt(us, ss, u_test, h(u_test))
    want = np.exp(2j * np.pi * u_test)
    assert np.max(np.abs(got - want)) < 1e-12


def test_sheet_path_consistency():
    """y stays on the curve and varies continuously along a line path."""
    f = k2.validate_polynomial(G6_COEFFS)
    x0, x1 = 2.0 + 0.5j, -1.5 + 0.8j
    y0 = np.sqrt(f(x0))
    path = SheetPath.build(f, [Line(x0, x1)], y0)
    prev = None
    for u in np.linspace(0.0, 1.0, 50):
        x = path.pieces[0].x_of(u)
        y = path.y_at(0, float(u), x)
        assert abs(y ** 2 - f(x)) < 1e-10 * max(1.0, abs(f(x)))
        if prev is not None:
            assert abs(y - prev) < 0.35 * max(1.0, abs(y))
        prev = y
