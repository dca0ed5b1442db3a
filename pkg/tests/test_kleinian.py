"""The weight-2 family S, S_jk, the wp extraction, and the Abel map."""

import numpy as np
import pytest

import kleinian2 as k2

from conftest import sample_divisor, sample_z


def test_context_certificates(w5_ctx, g6_ctx):
    for ctx in (w5_ctx, g6_ctx):
        assert ctx.theta_ref > 0
        assert ctx.jet_scale > 0
        assert np.max(np.abs(ctx.C - ctx.C.T)) < 1e-14 * np.max(np.abs(ctx.C))
    assert w5_ctx.c_sigma is not None
    assert abs(w5_ctx.c_sigma ** 2 + w5_ctx.c_S) < 1e-7 * abs(w5_ctx.c_S)
    assert g6_ctx.c_sigma is None


def test_S_even(any_ctx):
    rng = np.random.default_rng(41)
    for _ in range(10):
        z = sample_z(any_ctx, rng)
        a, b = k2.S_eval(any_ctx, z), k2.S_eval(any_ctx, -z)
        assert abs(a - b) < 1e-12 * max(1.0, abs(a))


def test_S_quasi_periodicity_exact_factor(any_ctx):
    """S(z + w) = S(z) exp(2 eta(w) . (z + w/2)) for every period w."""
    ctx = any_ctx
    rng = np.random.default_rng(42)
    for _ in range(10):
        z = sample_z(ctx, rng)
        mn = rng.integers(-2, 3, 4)
        if not mn.any():
            continue
        w = k2.lattice_vector(ctx.pd, mn)
        factor = np.exp(2.0 * k2.eta_of_lattice(ctx.pd, mn) @ (z + 0.5 * w))
        lhs = k2.S_eval(ctx, z + w)
        rhs = factor * k2.S_eval(ctx, z)
        assert abs(lhs - rhs) < 1e-8 * max(abs(lhs), abs(rhs))


def test_S_grad_matches_circle_quadrature(any_ctx):
    ctx = any_ctx
    rng = np.random.default_rng(43)
    r = 0.05 * ctx.jet_scale
    phases = np.exp(2j * np.pi * np.arange(16) / 16)
    for _ in range(5):
        z = sample_z(ctx, rng)
        got = k2.S_grad(ctx, z)
        for j, e in enumerate(np.eye(2)):
            vals = np.array([k2.S_eval(ctx, z + r * ph * e) for ph in phases])
            want = np.mean(vals / phases) / r
            assert abs(got[j] - want) < 1e-9 * max(1.0, abs(want))


def test_log_hessian_on_divisor_raises(any_ctx):
    with pytest.raises(k2.OnThetaDivisorError):
        k2.log_S_hessian(any_ctx, np.zeros(2))
    with pytest.raises(k2.OnThetaDivisorError):
        k2.wp_eval(any_ctx, np.zeros(2))


def test_wp_forward_consistency(any_ctx):
    """wp at the Abel image of a divisor reproduces the two-point functions
    xi_jk of that divisor."""
    ctx = any_ctx
    rng = np.random.default_rng(44)
    for _ in range(10):
        D = sample_divisor(ctx, rng)
        z = k2.abel_forward(ctx, D)
        got = np.array(k2.wp_eval(ctx, z))
        want = np.array(k2.xi_eval(ctx.f, D))
        ref = max(1.0, float(np.max(np.abs(want))))
        assert np.max(np.abs(got - want)) / ref < 1e-7


def test_abel_unordered_and_involution(any_ctx):
    ctx = any_ctx
    rng = np.random.default_rng(45)
    for _ in range(5):
        D = sample_divisor(ctx, rng)
        z1 = k2.abel_forward(ctx, D)
        z2 = k2.abel_forward(ctx, k2.Divisor(D.q, D.p))
        assert k2.nearest_lattice_residual(ctx.pd, z1 - z2) < 1e-9
        DJ = k2.Divisor(k2.involution(D.p), k2.involution(D.q))
        z3 = k2.abel_forward(ctx, DJ)
        assert k2.nearest_lattice_residual(ctx.pd, z1 + z3) < 1e-9


def test_abel_infinite_points_differ_by_z_star(g6_ctx):
    """Swapping which infinite point completes the divisor shifts the image
    by the infinity-to-infinity integral, modulo periods."""
    ctx = g6_ctx
    f = ctx.f
    x = 1.9 + 0.7j
    P = k2.CurvePoint(x, np.sqrt(f(x)))
    z1 = k2.abel_forward(ctx, k2.Divisor(P, k2.CurvePoint.at_infinity(1)))
    z2 = k2.abel_forward(ctx, k2.Divisor(P, k2.CurvePoint.at_infinity(2)))
    resid = k2.nearest_lattice_residual(ctx.pd, z1 - z2 - ctx.pd.z_star)
    assert resid < 1e-9


def test_abel_both_infinite(g6_ctx):
    inf1, inf2 = k2.CurvePoint.at_infinity(1), k2.CurvePoint.at_infinity(2)
    ctx = g6_ctx
    z = k2.abel_forward(ctx, k2.Divisor(inf1, inf1))
    assert np.max(np.abs(z - ctx.pd.z_star)) < 1e-12
    z = k2.abel_forward(ctx, k2.Divisor(inf2, inf2))
    assert np.max(np.abs(z + ctx.pd.z_star)) < 1e-12
    z = k2.abel_forward(ctx, k2.Divisor(inf1, inf2))
    assert np.max(np.abs(z)) == 0.0


def test_jacobi_invert_round_trip(any_ctx):
    ctx = any_ctx
    rng = np.random.default_rng(46)
    for _ in range(10):
        z = sample_z(ctx, rng)
        D = k2.jacobi_invert(ctx, z)
        assert k2.on_curve(ctx.f, D.p) and k2.on_curve(ctx.f, D.q)
        back = k2.abel_forward(ctx, D)
        resid = k2.nearest_lattice_residual(ctx.pd, back - z)
        assert resid < 1e-7 * max(1.0, float(np.linalg.norm(z)))


def test_quartic_certificate(any_ctx):
    ctx = any_ctx
    rng = np.random.default_rng(47)
    for _ in range(10):
        z = sample_z(ctx, rng)
        M = k2.quartic_matrix(ctx.f, *k2.wp_eval(ctx, z))
        assert M.shape == (4, 4)
        assert M[3, 3] == 0
        assert np.max(np.abs(M - M.T)) == 0.0
        assert k2.quartic_residual(ctx.f, *k2.wp_eval(ctx, z)) < 1e-7


def test_wp_is_abelian(any_ctx):
    """wp_jk take the same value at z and z + any period."""
    ctx = any_ctx
    rng = np.random.default_rng(54)
    for _ in range(5):
        z = sample_z(ctx, rng, clearance=0.05)
        mn = rng.integers(-2, 3, 4)
        w = k2.lattice_vector(ctx.pd, mn)
        a = np.array(k2.wp_eval(ctx, z))
        b = np.array(k2.wp_eval(ctx, z + w))
        assert np.max(np.abs(a - b)) < 1e-8 * max(1.0, np.max(np.abs(a)))


def test_sjk_equals_wp_times_S(any_ctx):
    ctx = any_ctx
    rng = np.random.default_rng(48)
    for _ in range(10):
        z = sample_z(ctx, rng, clearance=0.05)
        s = k2.S_eval(ctx, z)
        sjk = np.array(k2.S_jk_eval(ctx, z))
        wp = np.array(k2.wp_eval(ctx, z))
        assert np.max(np.abs(sjk - wp * s)) < 1e-7 * max(1.0, np.max(np.abs(sjk)))


def test_sjk_continuous_into_divisor(g6_ctx):
    """S_jk is entire: walking into the zero set of S (where wp blows up)
    must stay smooth across the switch to the extrapolated branch."""
    ctx = g6_ctx
    rng = np.random.default_rng(49)
    z0 = sample_z(ctx, rng, clearance=0.2)
    # pull z0 toward a zero of S by bisection on the clearance
    lo, hi = np.zeros(2), z0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if k2.divisor_clearance(ctx, mid) < 1e-12:
            lo = mid
        else:
            hi = mid
    z_div = 0.5 * (lo + hi)
    assert k2.divisor_clearance(ctx, z_div) < 1e-6
    d = (z0 - z_div) / np.linalg.norm(z0 - z_div)
    ts = np.geomspace(1e-6, 0.3, 24) * ctx.jet_scale
    vals = np.array([k2.S_jk_eval(ctx, z_div + t * d) for t in ts])
    # neighbouring samples along the ray differ smoothly (no branch jumps)
    steps = np.abs(np.diff(vals, axis=0))
    scale = max(1.0, float(np.max(np.abs(vals))))
    assert float(np.max(steps)) < 0.2 * scale


def test_taylor_z2_quartic_coefficient(g6_ctx):
    """The first z2-only structure of S beyond the quadratic term carries
    -f6/4 at order 4; measured with a 1-D circle sum along e2."""
    ctx = g6_ctx
    nodes, r = 64, 0.3 * ctx.jet_scale
    phases = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.array([k2.S_eval(ctx, np.array([0.0, r * ph])) for ph in phases])
    c4 = np.mean(vals * phases ** -4) / r ** 4
    want = -ctx.f.coeffs[6] / 4.0
    assert abs(c4 - want) < 1e-8


def test_rho_lambda_first_derivative_identities(any_ctx):
    """d1 log S = -2 rho1 + lambda and d2 log S = -2 rho2 along the very
    path that defines z."""
    ctx = any_ctx
    rng = np.random.default_rng(50)
    done = 0
    while done < 6:
        D = sample_divisor(ctx, rng)
        if abs(D.p.x - D.q.x) < 0.2:
            continue
        rho1, rho2, lam, z = k2.rho_lambda_eval(ctx, D)
        if k2.divisor_clearance(ctx, z) < 1e-3:
            continue
        g = k2.log_S_gradient(ctx, z)
        ref = max(1.0, abs(g[0]), abs(g[1]))
        assert abs(g[0] - (-2 * rho1 + lam)) / ref < 1e-6
        assert abs(g[1] - (-2 * rho2)) / ref < 1e-6
        done += 1


def test_rho_lambda_error_paths(g6_ctx):
    f = g6_ctx.f
    x = 1.4 + 0.3j
    P = k2.CurvePoint(x, np.sqrt(f(x)))
    with pytest.raises(k2.InfinitePointError):
        k2.rho_lambda_eval(g6_ctx, k2.Divisor(P, k2.CurvePoint.at_infinity(1)))
    with pytest.raises(k2.DiagonalError):
        k2.rho_lambda_eval(
            g6_ctx, k2.Divisor(P, k2.CurvePoint(x + 1e-9, np.sqrt(f(x + 1e-9)))))
    with pytest.raises(k2.SpecialDivisorError):
        k2.rho_lambda_eval(g6_ctx, k2.Divisor(P, k2.involution(P)))


def _abel_jacobian_inverse(D):
    """d(x1, x2)/d(z1, z2) from the two holomorphic forms at the divisor."""
    x1, y1, x2, y2 = D.p.x, D.p.y, D.q.x, D.q.y
    J = np.array([[1 / y1, 1 / y2], [x1 / y1, x2 / y2]])
    return np.linalg.inv(J)


def test_wp_derivatives_match_divisor_coordinates(w5_ctx):
    """dz-derivatives of wp_22 and wp_12, read off from the moving divisor,
    match the third logarithmic derivatives of sigma."""
    ctx = w5_ctx
    rng = np.random.default_rng(51)
    done = 0
    while done < 5:
        D = sample_divisor(ctx, rng)
        if abs(D.p.x - D.q.x) < 0.3:
            continue
        z = k2.abel_forward(ctx, D)
        try:
            _, _, wp111, wp112, wp122, wp222 = k2.sigma_log_derivs(ctx, z)
        except k2.OnSigmaDivisorError:
            continue
        Jin = _abel_jacobian_inverse(D)
        x1, x2 = D.p.x, D.q.x
        # wp22 = x1 + x2, wp12 = -x1 x2; chain rule over the moving points
        grad22 = Jin.T @ np.array([1.0, 1.0])
        grad12 = Jin.T @ np.array([-x2, -x1])
        ref = max(1.0, abs(wp222), abs(wp122), abs(wp112))
        assert abs(grad22[1] - wp222) / ref < 1e-8
        assert abs(grad22[0] - wp122) / ref < 1e-8
        assert abs(grad12[0] - wp112) / ref < 1e-8
        assert abs(grad12[1] - wp122) / ref < 1e-8
        done += 1


def test_evaluate_bundle_divisor_omits_wp(g6_ctx):
    b = k2.evaluate_bundle(g6_ctx, np.zeros(2))
    assert b.S == 0 or abs(b.S) < 1e-20
    assert b.p11 is None and b.p12 is None and b.p22 is None
    assert abs(b.S11 - 1.0) < 1e-6
    z = sample_z(g6_ctx, np.random.default_rng(52))
    b = k2.evaluate_bundle(g6_ctx, z)
    assert b.p11 is not None


def test_evaluate_bundle_sigma_gate(w5_ctx, g6_ctx):
    z = sample_z(w5_ctx, np.random.default_rng(53))
    b = k2.evaluate_bundle(w5_ctx, z, want_sigma=True)
    assert b.sigma is not None and b.zeta1 is not None
    assert abs(b.sigma ** 2 - b.S) < 1e-8 * max(1.0, abs(b.S))
    with pytest.raises(k2.NotWeierstrassFormError):
        k2.evaluate_bundle(g6_ctx, np.array([0.3, 0.2]), want_sigma=True)
