"""Shared fixtures: the two reference curves with certified period data.

Period computation dominates the runtime, so the contexts are built once
per session and shared read-only (all arrays are frozen).
"""

import numpy as np
import pytest

import kleinian2 as k2

W5_COEFFS = [0.0, -4.0, 0.0, 0.0, 0.0, 4.0, 0.0]
G6_COEFFS = [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]


@pytest.fixture(scope="session")
def w5_ctx():
    return k2.make_context(k2.validate_polynomial(W5_COEFFS))


@pytest.fixture(scope="session")
def g6_ctx():
    return k2.make_context(k2.validate_polynomial(G6_COEFFS))


@pytest.fixture(scope="session", params=["w5", "g6"])
def any_ctx(request, w5_ctx, g6_ctx):
    return w5_ctx if request.param == "w5" else g6_ctx


def sample_z(ctx, rng, clearance=1e-2):
    """Random z in the fundamental cell, away from the zero set of S."""
    while True:
        t = rng.uniform(-0.5, 0.5, 4)
        z = ctx.pd.A @ t[:2] + ctx.pd.B @ t[2:]
        if k2.divisor_clearance(ctx, z) > clearance:
            return z


def sample_divisor(ctx, rng):
    """Random non-special affine divisor with well-separated x values."""
    f, scale = ctx.f, ctx.pd.scale
    while True:
        xs = []
        for _ in range(2):
            r = scale * rng.uniform(0.3, 1.5)
            xs.append(r * np.exp(2j * np.pi * rng.uniform()))
        if abs(xs[0] - xs[1]) < 0.05 * scale:
            continue
        if min(abs(x - b) for x in xs for b in ctx.pd.roots) < 0.05 * scale:
            continue
        ys = [np.sqrt(f(x)) * rng.choice([-1.0, 1.0]) for x in xs]
        D = k2.Divisor(k2.CurvePoint(xs[0], ys[0]), k2.CurvePoint(xs[1], ys[1]))
        if not k2.is_special(f, D):
            return D
