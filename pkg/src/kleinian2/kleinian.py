"""Kleinian functions of weight 2 for a genus-2 curve y^2 = f(x).

S is the fundamental entire function on C^2 whose second logarithmic
derivatives produce the wp functions; S11, S12, S22 are its weight-2
companions with S_jk = wp_jk * S away from the zero set of S.  For
degree-5 curves the sigma function and its logarithmic derivatives
(zeta_j, wp_jkl) are available as well.  Everything reduces to theta
jets on the Jacobian plus an exponential quadratic-form factor.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curve import CurvePoint, Divisor, F_eval, involution, is_special
from .errors import (DiagonalError, InfinitePointError, NormalizationError,
                     NotWeierstrassFormError, OnSigmaDivisorError,
                     OnThetaDivisorError, RootSelectionAmbiguity,
                     SignResolutionError, SpecialDivisorError)
from .integration import (all_numerators, holomorphic_numerators,
                          integrate_forms, path_between,
                          point_infinity_integrals)
from .periods import compute_period_data, nearest_lattice_residual
from .theta import ThetaParams, theta_eval, theta_jet

ZERO_FACTOR = 1e-6     # on-divisor guard, relative to the theta scale
NEAR_FACTOR = 1e-4     # degree-6 S_jk switches to extrapolation below this
TOL_JET = 1e-7
TOL_RT = 1e-7
TOL_ID = 1e-7
DIAG_FACTOR = 1e-4


@dataclass(frozen=True)
class KleinianContext:
    """Everything needed to evaluate the function family at points z.

    c_S normalizes S to the jet S = z1^2 + O(z^4); c_sigma (degree 5 in
    Weierstrass form only, else None) normalizes sigma to d(sigma)/dz1 = 1
    at the origin.  Ainv and C = etaA @ Ainv are cached for the theta
    pullbacks; theta_ref sets the scale for on-divisor guards; jet_scale
    is a safe step size for finite differences in z."""
    f: object
    pd: object
    tp: ThetaParams
    c_S: complex
    c_sigma: Optional[complex]
    Ainv: np.ndarray
    C: np.ndarray
    theta_ref: float
    jet_scale: float


def make_context(f, pd=None, tol=1e-12):
    """Build the evaluation context, certifying the normalization.

    The second z-jet of exp(z^T C z) * theta(u - Delta) * theta(u + Delta)
    at 0 must be a rank-one symmetric pair with no z2 component; if not,
    the base-point constant is wrong and evaluation would be meaningless.
    """
    if pd is None:
        pd = compute_period_data(f, tol=tol)
    tp = ThetaParams.build(pd.Omega)
    Ainv = np.linalg.inv(pd.A)
    C = pd.etaA @ Ainv
    C = 0.5 * (C + C.T)

    theta_ref = abs(theta_eval(tp, np.zeros(2)))
    jm = theta_jet(tp, -pd.Delta, 1)
    jp = theta_jet(tp, pd.Delta, 1)
    # Gate the vanishing against the local gradient as well as the global
    # reference: a lattice translate of Delta scales theta and its gradient
    # by the same quasi-periodicity factor, which can dwarf theta_ref.
    for jet in (jm, jp):
        local = float(np.hypot(abs(jet[1, 0]), abs(jet[0, 1])))
        if abs(jet[0, 0]) > 1e-6 * max(theta_ref, local):
            raise NormalizationError(
                "theta does not vanish at +-Delta; base-point constant is "
                "not on the theta divisor")
    v = Ainv.T @ np.array([jm[1, 0], jm[0, 1]])
    w = Ainv.T @ np.array([jp[1, 0], jp[0, 1]])
    if abs(v[0] * w[0]) < 1e-300:
        raise NormalizationError("degenerate gradient at Delta")
    c_S = 1.0 / (v[0] * w[0])
    hess_scale = max(abs(v[0] * w[0]), abs(v[1] * w[1]),
                     abs(v[0] * w[1]), abs(v[1] * w[0]))
    if (abs(c_S * (v[0] * w[1] + v[1] * w[0])) > TOL_JET
            or abs(2.0 * c_S * v[1] * w[1]) > TOL_JET
            or hess_scale == 0.0):
        raise NormalizationError(
            "second jet of the theta product is not proportional to "
            "z1^2; period data and base-point constant are inconsistent")

    c_sigma = None
    if f.weierstrass_form:
        if pd.delta_char is None:
            raise NormalizationError(
                "no half-integer characteristic stored for a degree-5 "
                "curve; sigma normalization unavailable")
        c_sigma = 1.0 / v[0]
        if abs(c_sigma ** 2 + c_S) > TOL_JET * abs(c_S):
            raise NormalizationError(
                "sigma normalization does not square to the S "
                "normalization")

    jet_scale = 0.5 * float(np.linalg.svd(pd.A, compute_uv=False)[-1])
    for arr in (Ainv, C):
        arr.setflags(write=False)
    return KleinianContext(f=f, pd=pd, tp=tp, c_S=c_S, c_sigma=c_sigma,
                           Ainv=Ainv, C=C, theta_ref=theta_ref,
                           jet_scale=jet_scale)


# -- scalar evaluation --------------------------------------------------------

def _as_z(z):
    return np.asarray(z, dtype=complex).reshape(2)


def _theta_pair(ctx, z, order=0):
    u = ctx.Ainv @ z
    jm = theta_jet(ctx.tp, u - ctx.pd.Delta, order)
    jp = theta_jet(ctx.tp, u + ctx.pd.Delta, order)
    return u, jm, jp


def divisor_clearance(ctx, z):
    """min(|theta(u - Delta)|, |theta(u + Delta)|) over the theta scale;
    small values mean z sits near the zero set of S."""
    _, jm, jp = _theta_pair(ctx, _as_z(z), 0)
    return min(abs(jm[0, 0]), abs(jp[0, 0])) / ctx.theta_ref


def S_eval(ctx, z):
    """The entire function S; zero exactly on the Abel image of the curve
    shifted by the base-point constant (and its reflection)."""
    z = _as_z(z)
    u, jm, jp = _theta_pair(ctx, z, 0)
    quad = z @ ctx.C @ z
    return ctx.c_S * np.exp(quad) * jm[0, 0] * jp[0, 0]


def S_grad(ctx, z):
    """Analytic gradient of S."""
    z = _as_z(z)
    u, jm, jp = _theta_pair(ctx, z, 1)
    p, q = jm[0, 0], jp[0, 0]
    gp = ctx.Ainv.T @ np.array([jm[1, 0], jm[0, 1]])
    gq = ctx.Ainv.T @ np.array([jp[1, 0], jp[0, 1]])
    e = ctx.c_S * np.exp(z @ ctx.C @ z)
    return e * (2.0 * (ctx.C @ z) * p * q + gp * q + p * gq)


def _pullback_log_hessian(ctx, jet):
    """z-space Hessian of log of one theta factor, from its order-2 jet."""
    p = jet[0, 0]
    g = np.array([jet[1, 0], jet[0, 1]])
    H = np.array([[jet[2, 0], jet[1, 1]], [jet[1, 1], jet[0, 2]]])
    hu = H / p - np.outer(g, g) / p ** 2
    return ctx.Ainv.T @ hu @ ctx.Ainv


def log_S_hessian(ctx, z):
    """Second logarithmic derivatives of S (matrix L with L_jk =
    d^2 log S / dz_j dz_k), the raw material for the wp functions."""
    z = _as_z(z)
    u, jm, jp = _theta_pair(ctx, z, 2)
    if min(abs(jm[0, 0]), abs(jp[0, 0])) < ZERO_FACTOR * ctx.theta_ref:
        raise OnThetaDivisorError(
            "z lies on (or too near) the zero set of S")
    return (2.0 * ctx.C + _pullback_log_hessian(ctx, jm)
            + _pullback_log_hessian(ctx, jp))


def log_S_gradient(ctx, z):
    """First logarithmic derivatives of S."""
    z = _as_z(z)
    u, jm, jp = _theta_pair(ctx, z, 1)
    if min(abs(jm[0, 0]), abs(jp[0, 0])) < ZERO_FACTOR * ctx.theta_ref:
        raise OnThetaDivisorError(
            "z lies on (or too near) the zero set of S")
    gp = ctx.Ainv.T @ np.array([jm[1, 0], jm[0, 1]]) / jm[0, 0]
    gq = ctx.Ainv.T @ np.array([jp[1, 0], jp[0, 1]]) / jp[0, 0]
    return 2.0 * (ctx.C @ z) + gp + gq


def quartic_matrix(f, p11, p12, p22):
    """The 4x4 matrix whose vanishing determinant is the defining algebraic
    relation among the three wp values on one Jacobian."""
    c = f.coeffs
    m = np.array([
        [-c[0], c[1] / 2, 2 * p11, -2 * p12],
        [c[1] / 2, -c[2] - 4 * p11 - c[6] * p12 ** 2,
         c[3] / 2 + (c[5] / 2) * p12 + c[6] * p12 * p22, 2 * p22],
        [2 * p11, c[3] / 2 + (c[5] / 2) * p12 + c[6] * p12 * p22,
         -c[4] - c[5] * p22 - c[6] * p22 ** 2, 2],
        [-2 * p12, 2 * p22, 2, 0],
    ], dtype=complex)
    return m


def quartic_residual(f, p11, p12, p22):
    """|det| of the defining relation, scaled by the fourth power of the
    largest matrix entry."""
    m = quartic_matrix(f, p11, p12, p22)
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return np.inf
    return float(abs(np.linalg.det(m))) / scale ** 4


def _selection_residual(f, p11, p12, p22):
    """Row-scaled |det| of the defining relation.  Sharper than the global
    scaling when wp11 dwarfs the other entries (near the zero set of S),
    where a wrong cubic branch can otherwise sneak under the tolerance."""
    m = quartic_matrix(f, p11, p12, p22)
    row = np.max(np.abs(m), axis=1)
    if np.any(row == 0.0):
        return np.inf
    return float(abs(np.linalg.det(m)) / np.prod(row))


def wp_eval(ctx, z, _depth=4):
    """(wp11, wp12, wp22) at z, from the logarithmic Hessian of S.

    The Hessian determines the triple linearly for degree-5 curves; for
    degree 6 the 22-component satisfies a cubic whose physical root is
    selected by the defining quartic relation, with a short continuity
    walk toward a nearby point if more than one root passes.
    """
    z = _as_z(z)
    L = log_S_hessian(ctx, z)
    c = ctx.f.coeffs
    f5, f6 = c[5], c[6]
    if f6 == 0:
        p12 = -2.0 * L[0, 1] / f5
        p22 = -2.0 * L[1, 1] / f5
        p11 = -L[0, 0] / 2.0
        return (p11, p12, p22)

    cubic = [f6 ** 2, f5 * f6, f5 ** 2 / 4.0 + f6 * L[1, 1],
             (f5 / 2.0) * L[1, 1] - f6 * L[0, 1]]
    cands = []
    for P in np.roots(cubic):
        p22 = complex(P)
        p12 = -(L[1, 1] + (f5 / 2.0) * p22 + f6 * p22 ** 2) / f6
        p11 = -(L[0, 0] + f6 * p12 ** 2) / 2.0
        cands.append(((p11, p12, p22),
                      _selection_residual(ctx.f, p11, p12, p22)))
    cands.sort(key=lambda t: t[1])
    passing = [c0 for c0 in cands if c0[1] < TOL_ID]
    if len(passing) == 1:
        return passing[0][0]
    if not passing:
        # fall back to the best candidate; the verify suite will flag a
        # genuine failure through the quartic-determinant check
        return cands[0][0]
    return _resolve_root(ctx, z, [c0[0] for c0 in passing], _depth)


def _resolve_root(ctx, z, cands, depth):
    """Pick among quartic-passing wp candidates by continuity against a
    nearby unambiguous point."""
    if depth <= 0:
        raise RootSelectionAmbiguity(
            "multiple wp branches satisfy the defining relation and no "
            "nearby reference point resolves them")
    bump = 0.05 * ctx.jet_scale
    for z_ref in (0.95 * z, 1.05 * z, z + np.array([bump, 0]),
                  z + np.array([0, bump])):
        try:
            ref = wp_eval(ctx, z_ref, _depth=depth - 1)
        except (OnThetaDivisorError, RootSelectionAmbiguity):
            continue
        return min(cands, key=lambda t: abs(t[2] - ref[2]))
    raise RootSelectionAmbiguity(
        "multiple wp branches satisfy the defining relation and no "
        "nearby reference point resolves them")


# -- the weight-2 quota S11, S12, S22 ----------------------------------------

def _sigma_twist(ctx, z, u):
    """Quadratic + characteristic-linear exponent for the single-theta
    representation (degree 5)."""
    n0, m0 = ctx.pd.delta_char
    lin = -1j * np.pi * (np.asarray(m0) @ u)
    return 0.5 * (z @ ctx.C @ z) + lin


def _sjk_degree5(ctx, z):
    z = _as_z(z)
    u = ctx.Ainv @ z
    jm = theta_jet(ctx.tp, u - ctx.pd.Delta, 2)
    p = jm[0, 0]
    gz = ctx.Ainv.T @ np.array([jm[1, 0], jm[0, 1]])
    Hu = np.array([[jm[2, 0], jm[1, 1]], [jm[1, 1], jm[0, 2]]])
    Hz = ctx.Ainv.T @ Hu @ ctx.Ainv
    e2g = np.exp(2.0 * _sigma_twist(ctx, z, u))
    G = e2g * (p * Hz - np.outer(gz, gz) + ctx.C * p ** 2)
    f5 = ctx.f.coeffs[5]
    return np.array([ctx.c_S * G[0, 0],
                     (4.0 * ctx.c_S / f5) * G[0, 1],
                     (4.0 * ctx.c_S / f5) * G[1, 1]])


def _sjk_direct(ctx, z):
    S = S_eval(ctx, z)
    p11, p12, p22 = wp_eval(ctx, z)
    return np.array([p11 * S, p12 * S, p22 * S])


_EX_WEIGHTS = (1.5, -0.6, 0.1)


def _sjk_extrapolated(ctx, z):
    """Even 6-node extrapolation through off-divisor points; S_jk is
    entire, so the poles of wp against the zero of S cancel and nearby
    values extrapolate cleanly."""
    z = _as_z(z)
    h = 0.02 * ctx.jet_scale
    dirs = []
    g = S_grad(ctx, z)
    gn = np.linalg.norm(g)
    if gn > 0:
        dirs.append(g / gn)
    s = 1.0 / np.sqrt(2.0)
    dirs += [np.array([1.0, 0]), np.array([0, 1.0]),
             np.array([s, s]), np.array([s, -s])]
    chosen, best, best_clear = None, None, -1.0
    for d in dirs:
        clear = min(divisor_clearance(ctx, z + k * h * d)
                    for k in (-3, -2, -1, 1, 2, 3))
        if clear > best_clear:
            best, best_clear = d, clear
        if clear >= 0.3 * NEAR_FACTOR:
            chosen = d
            break
    if chosen is None:
        chosen = best
    out = np.zeros(3, dtype=complex)
    for k, wk in enumerate(_EX_WEIGHTS, start=1):
        out += 0.5 * wk * (_sjk_direct(ctx, z + k * h * chosen)
                           + _sjk_direct(ctx, z - k * h * chosen))
    return out


def S_jk_eval(ctx, z):
    """(S11, S12, S22) at z; entire, no excluded points.

    Degree-5 curves use an exact single-theta product form that stays
    stable on the zero set of S; degree-6 curves use wp * S directly and
    switch to even extrapolation when z is too close to that zero set.
    """
    z = _as_z(z)
    if ctx.f.coeffs[6] == 0:
        return _sjk_degree5(ctx, z)
    if divisor_clearance(ctx, z) < NEAR_FACTOR:
        return _sjk_extrapolated(ctx, z)
    return _sjk_direct(ctx, z)


# -- sigma family (degree 5, Weierstrass form) --------------------------------

def _require_weierstrass(ctx):
    if not ctx.f.weierstrass_form or ctx.c_sigma is None:
        raise NotWeierstrassFormError(
            "sigma functions require a degree-5 curve in Weierstrass "
            "form (f6 = 0, f5 = 4)")


def sigma_eval(ctx, z):
    """The odd entire sigma function with unit jet dsigma/dz1(0) = 1."""
    _require_weierstrass(ctx)
    z = _as_z(z)
    u = ctx.Ainv @ z
    p = theta_eval(ctx.tp, u - ctx.pd.Delta)
    return ctx.c_sigma * np.exp(_sigma_twist(ctx, z, u)) * p


def sigma_jets(ctx, z, order=2):
    """sigma and its partial derivatives up to the given order (max 3),
    as a dict keyed by (k1, k2)."""
    _require_weierstrass(ctx)
    z = _as_z(z)
    u = ctx.Ainv @ z
    jm = theta_jet(ctx.tp, u - ctx.pd.Delta, order)
    d1, d2, d3 = _pullback_jets(ctx, jm, order)
    n0, m0 = ctx.pd.delta_char
    g1 = ctx.C @ z - 1j * np.pi * (ctx.Ainv.T @ np.asarray(m0))
    e = ctx.c_sigma * np.exp(_sigma_twist(ctx, z, u))
    out = {(0, 0): e * jm[0, 0]}
    if order >= 1:
        for j, key in ((0, (1, 0)), (1, (0, 1))):
            out[key] = e * (d1[j] + g1[j] * jm[0, 0])
    if order >= 2:
        for (j, k), key in (((0, 0), (2, 0)), ((0, 1), (1, 1)),
                            ((1, 1), (0, 2))):
            out[key] = e * (d2[j, k] + g1[j] * d1[k] + g1[k] * d1[j]
                            + (ctx.C[j, k] + g1[j] * g1[k]) * jm[0, 0])
    if order >= 3:
        for (j, k, l), key in (((0, 0, 0), (3, 0)), ((0, 0, 1), (2, 1)),
                               ((0, 1, 1), (1, 2)), ((1, 1, 1), (0, 3))):
            t = d3[j, k, l]
            t += g1[j] * d2[k, l] + g1[k] * d2[j, l] + g1[l] * d2[j, k]
            t += ((ctx.C[j, k] + g1[j] * g1[k]) * d1[l]
                  + (ctx.C[j, l] + g1[j] * g1[l]) * d1[k]
                  + (ctx.C[k, l] + g1[k] * g1[l]) * d1[j])
            t += (g1[j] * ctx.C[k, l] + g1[k] * ctx.C[j, l]
                  + g1[l] * ctx.C[j, k]
                  + g1[j] * g1[k] * g1[l]) * jm[0, 0]
            out[key] = e * t
    return out


def _pullback_jets(ctx, jet, order):
    """Theta-factor derivative tensors in z coordinates."""
    Ai = ctx.Ainv
    d1 = d2 = d3 = None
    if order >= 1:
        gu = np.array([jet[1, 0], jet[0, 1]])
        d1 = Ai.T @ gu
    if order >= 2:
        Hu = np.array([[jet[2, 0], jet[1, 1]], [jet[1, 1], jet[0, 2]]])
        d2 = Ai.T @ Hu @ Ai
    if order >= 3:
        Tu = np.zeros((2, 2, 2), dtype=complex)
        for a in (0, 1):
            for b in (0, 1):
                for c in (0, 1):
                    k2 = a + b + c
                    Tu[a, b, c] = jet[3 - k2, k2]
        d3 = np.einsum("abc,aj,bk,cl->jkl", Tu, Ai, Ai, Ai)
    return d1, d2, d3


def sigma_log_derivs(ctx, z):
    """(zeta1, zeta2, wp111, wp112, wp122, wp222) at z.

    zeta_j is the first logarithmic derivative of sigma; wp_jkl are minus
    its third logarithmic derivatives.
    """
    _require_weierstrass(ctx)
    z = _as_z(z)
    u = ctx.Ainv @ z
    jm = theta_jet(ctx.tp, u - ctx.pd.Delta, 3)
    p = jm[0, 0]
    if abs(p) < ZERO_FACTOR * ctx.theta_ref:
        raise OnSigmaDivisorError(
            "z lies on (or too near) the zero set of sigma")
    d1, d2, d3 = _pullback_jets(ctx, jm, 3)
    n0, m0 = ctx.pd.delta_char
    g1 = ctx.C @ z - 1j * np.pi * (ctx.Ainv.T @ np.asarray(m0))
    zeta = g1 + d1 / p
    h3 = (d3 / p
          - (np.einsum("jk,l->jkl", d2, d1) + np.einsum("jl,k->jkl", d2, d1)
             + np.einsum("kl,j->jkl", d2, d1)) / p ** 2
          + 2.0 * np.einsum("j,k,l->jkl", d1, d1, d1) / p ** 3)
    return (zeta[0], zeta[1],
            -h3[0, 0, 0], -h3[0, 0, 1], -h3[0, 1, 1], -h3[1, 1, 1])


# -- Abel map and inversion ---------------------------------------------------

def _infinity_base_label(f, P):
    """Label of the infinite point the Abel path starts from, which is the
    involution image of P."""
    if f.degree == 5:
        return 1
    return 3 - P.infinity


def abel_forward(ctx, D):
    """Abel image of the degree-2 divisor D = (p) + (q): the integral of
    (dx/y, x dx/y) from the involution image of p to q along one concrete
    path.  Unordered-pair symmetry holds because the forms are odd under
    the involution."""
    f, pd = ctx.f, ctx.pd
    roots = list(pd.roots)
    p0, q0 = D.p, D.q
    if not p0.is_affine and not q0.is_affine:
        if f.degree == 5:
            return np.zeros(2, dtype=complex)
        base = 3 - p0.infinity
        if base == q0.infinity:
            return np.zeros(2, dtype=complex)
        return np.array(pd.z_star) if base == 2 else -np.array(pd.z_star)
    if p0.is_affine and q0.is_affine:
        path = path_between(f, roots, involution(p0), q0)
        return integrate_forms(path, holomorphic_numerators())
    if p0.is_affine:
        p0, q0 = q0, p0
    base = _infinity_base_label(f, p0)
    J, landed_plus = point_infinity_integrals(f, roots, q0, pd.scale)
    if f.degree == 5:
        return J
    landed = 1 if landed_plus else 2
    if base == landed:
        return J
    return J + pd.z_star if base == 2 else J - pd.z_star


def jacobi_invert(ctx, z):
    """The unordered divisor (p) + (q) whose Abel image is z mod periods.

    x-coordinates come from the quadratic with elementary symmetric
    functions wp22 and -wp12; the y product is fixed by wp11 through the
    two-point function of the curve, and the global sign by an Abel
    round trip.
    """
    z = _as_z(z)
    if divisor_clearance(ctx, z) < ZERO_FACTOR:
        raise OnThetaDivisorError(
            "z lies on the zero set of S; the divisor degenerates")
    p11, p12, p22 = wp_eval(ctx, z)
    disc = np.sqrt(p22 ** 2 + 4.0 * p12)
    x1 = (p22 + disc) / 2.0
    x2 = (p22 - disc) / 2.0
    y1 = np.sqrt(complex(ctx.f(x1)))
    y2 = np.sqrt(complex(ctx.f(x2)))
    target = (F_eval(ctx.f, x1, x2) - 4.0 * p11 * (x1 - x2) ** 2) / 2.0
    if abs(y1 * y2) > 0 and abs(target + y1 * y2) < abs(target - y1 * y2):
        y2 = -y2
    for s in (1.0, -1.0):
        D = Divisor(CurvePoint.affine(x1, s * y1),
                    CurvePoint.affine(x2, s * y2))
        za = abel_forward(ctx, D)
        resid = nearest_lattice_residual(ctx.pd, za - z)
        if resid <= TOL_RT * max(1.0, float(np.linalg.norm(z))):
            return D
    raise SignResolutionError(
        "no sheet assignment of the inverted divisor reproduces z")


def rho_lambda_eval(ctx, D):
    """(rho1, rho2, lam, z) for a non-special affine divisor with distinct
    x-coordinates: second-kind integrals along one concrete Abel path,
    the chord slope lam = (y_p - y_q)/(x_p - x_q), and the Abel image z
    of that same path, so the first-derivative identities hold exactly
    as stated."""
    f, pd = ctx.f, ctx.pd
    p0, q0 = D.p, D.q
    if not (p0.is_affine and q0.is_affine):
        raise InfinitePointError(
            "second-kind evaluation requires both points affine")
    if is_special(f, D):
        raise SpecialDivisorError(
            "divisor is special; second-kind integrals diverge")
    if abs(p0.x - q0.x) < DIAG_FACTOR * pd.scale:
        raise DiagonalError("divisor points share an x-coordinate")
    path = path_between(f, list(pd.roots), involution(p0), q0)
    vals = integrate_forms(path, all_numerators(f))
    lam = (p0.y - q0.y) / (p0.x - q0.x)
    return vals[2], vals[3], lam, vals[:2]


# -- bundled evaluation -------------------------------------------------------

@dataclass(frozen=True)
class EvalBundle:
    """One-point evaluation record; wp fields are None on the zero set of
    S, sigma fields are None unless requested on a Weierstrass curve."""
    z: np.ndarray
    S: complex
    S11: complex
    S12: complex
    S22: complex
    p11: Optional[complex] = None
    p12: Optional[complex] = None
    p22: Optional[complex] = None
    sigma: Optional[complex] = None
    zeta1: Optional[complex] = None
    zeta2: Optional[complex] = None
    p111: Optional[complex] = None
    p112: Optional[complex] = None
    p122: Optional[complex] = None
    p222: Optional[complex] = None


def evaluate_bundle(ctx, z, want_sigma=False):
    z = _as_z(z)
    S = S_eval(ctx, z)
    s11, s12, s22 = S_jk_eval(ctx, z)
    fields = dict(z=z, S=S, S11=s11, S12=s12, S22=s22)
    try:
        p11, p12, p22 = wp_eval(ctx, z)
        fields.update(p11=p11, p12=p12, p22=p22)
    except OnThetaDivisorError:
        pass
    if want_sigma:
        _require_weierstrass(ctx)
        fields["sigma"] = sigma_eval(ctx, z)
        try:
            ld = sigma_log_derivs(ctx, z)
            fields.update(zeta1=ld[0], zeta2=ld[1], p111=ld[2],
                          p112=ld[3], p122=ld[4], p222=ld[5])
        except OnSigmaDivisorError:
            pass
    return EvalBundle(**fields)
