"""Periods of the holomorphic and second-kind differentials on y^2 = f(x).

The homology layout is elementary: four loops, each encircling a consecutive
pair of branch points in a canonical ordering.  Adjacent loops intersect
once, so an integer symplectic change of basis turns them into a standard
(a1, a2, b1, b2) frame.  Orientations of the elementary loops cannot be
fixed combinatorially from segment data alone, so the assembly searches the
sign patterns (and the a/b swap) and accepts the variant that passes the
Riemann-matrix and Legendre certificates; any variant that passes those is
a genuine symplectic basis, which is all downstream code relies on.
"""

from dataclasses import dataclass
from itertools import product
import warnings

import numpy as np

from .curve import branch_points
from .errors import (DegenerateGeometryError, DeltaAmbiguityError,
                     IllConditionedLatticeError, NewtonDivergence,
                     RiemannMatrixError)
from .integration import (SheetPath, all_numerators, infinity_to_infinity,
                          integrate_forms, point_infinity_integrals,
                          segment_period_integrals)
from .theta import ThetaParams, theta_eval, theta_jet

TOL_SYM = 1e-8
TOL_LEG = 1e-8
TOL_LAT = 1e-8
COND_CAP = 1e12
SCALE_BAND = (0.1, 10.0)

# rows (a1, a2, b1, b2) -> (b1, b2, -a1, -a2), the standard J matrix
_SWAP = np.array([[0, 0, 1, 0],
                  [0, 0, 0, 1],
                  [-1, 0, 0, 0],
                  [0, -1, 0, 0]], dtype=int)


@dataclass(frozen=True)
class CycleSet:
    """Homology data: elementary branch-pair loops plus the integer
    change of basis to a symplectic frame.

    pairs[k] = (i, j) means loop k encircles branch points i and j; its
    encoding as segments is (i -> j on the tracked sheet, j -> i on the
    other).  transform rows give (a1, a2, b1, b2) in loop coordinates and
    intersection is the pairing matrix of the transformed frame.
    """
    pairs: tuple
    cycles: tuple
    intersection: np.ndarray
    transform: np.ndarray
    labels: tuple = ("a1", "a2", "b1", "b2")


def _pairing(M, u, v):
    return int(u @ M @ v)


def _symplectic_gram_schmidt(M):
    """Integer rows (a1, a2, b1, b2) with T M T^T equal to the standard
    symplectic form, for an antisymmetric integer M with unit pairings."""
    vecs = [np.eye(4, dtype=int)[k] for k in range(4)]
    a_rows, b_rows = [], []
    for _ in range(2):
        found = None
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if abs(_pairing(M, vecs[i], vecs[j])) == 1:
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            raise RiemannMatrixError("no unimodular pair in intersection form")
        a = vecs[found[0]]
        b = vecs[found[1]]
        if _pairing(M, a, b) == -1:
            b = -b
        rest = [v for k, v in enumerate(vecs) if k not in found]
        vecs = [v - _pairing(M, v, b) * a + _pairing(M, v, a) * b
                for v in rest]
        a_rows.append(a)
        b_rows.append(b)
    return np.array(a_rows + b_rows, dtype=int)


def _segment_distance(p, a, b):
    d = b - a
    t = ((p - a) * np.conj(d)).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def _segments_cross(a, b, c, d):
    def orient(p, q, r):
        return np.sign(((q - p) * np.conj(r - p)).imag)
    return (orient(a, b, c) * orient(a, b, d) < 0
            and orient(c, d, a) * orient(c, d, b) < 0)


def _check_geometry(roots, pairs, scale):
    segs = [(roots[i], roots[j]) for i, j in pairs]
    for k, (i, j) in enumerate(pairs):
        for m, r in enumerate(roots):
            if m in (i, j):
                continue
            if _segment_distance(r, *segs[k]) < 1e-6 * scale:
                raise DegenerateGeometryError(
                    "a branch point lies on another pair's segment")
    for k in range(len(segs)):
        for m in range(k + 2, len(segs)):
            if set(pairs[k]) & set(pairs[m]):
                continue
            if _segments_cross(*segs[k], *segs[m]):
                raise DegenerateGeometryError(
                    "branch-pair segments cross; no planar loop layout")


def build_cycles(f, ordering=None):
    """Four elementary loops around consecutive branch-point pairs, with
    the integer symplectic change of basis for the standard pairing."""
    roots = branch_points(f)
    if ordering is not None:
        roots = [roots[k] for k in ordering]
    scale = max(1.0, max(abs(r) for r in roots))
    pairs = tuple((i, i + 1) for i in range(4))
    _check_geometry(roots, pairs, scale)
    cycles = tuple(((i, j, +1), (j, i, -1)) for i, j in pairs)
    # adjacent loops share one branch point and meet once; the signs are
    # certified downstream, so claim the +1 pattern here
    M = np.zeros((4, 4), dtype=int)
    for i in range(3):
        M[i, i + 1] = 1
        M[i + 1, i] = -1
    T = _symplectic_gram_schmidt(M)
    inter = T @ M @ T.T
    return CycleSet(pairs=pairs, cycles=cycles, intersection=inter,
                    transform=T)


@dataclass(frozen=True)
class PeriodData:
    """Certified period data of a symplectic basis.

    Columns of A, B hold integrals of (dx/y, x dx/y) over the a- and
    b-cycles; etaA, etaB hold minus the integrals of (r1, r2).  Delta is
    the base-point constant making theta vanish on the Abel image of the
    curve; for degree-5 curves delta_char stores its half-integer
    characteristic (n0, m0).  z_star is the between-infinities integral
    (degree 6), used by the Abel map; cycles records the branch-point
    pairing the basis was built from.
    """
    A: np.ndarray
    B: np.ndarray
    etaA: np.ndarray
    etaB: np.ndarray
    Omega: np.ndarray
    Delta: np.ndarray
    delta_char: tuple
    cycles: CycleSet
    f: object
    roots: tuple
    scale: float
    z_star: np.ndarray


def elementary_cycle_integrals(f, roots, pairs, tol=1e-12):
    """Row k holds the integrals of (omega1, omega2, r1, r2) over loop k;
    a loop doubles its segment integral (out on one sheet, back on the
    other, where dx/y picks up the same value)."""
    W = np.zeros((4, 4), dtype=complex)
    for k, (i, j) in enumerate(pairs):
        W[k] = 2.0 * segment_period_integrals(f, roots, i, j, tol=tol)
    return W


def _residuals(A, B, etaA, etaB):
    eye = 2j * np.pi * np.eye(2)
    r = {}
    try:
        Omega = np.linalg.solve(A, B)
    except np.linalg.LinAlgError:
        return None, {"singular": np.inf}
    r["sym"] = float(np.max(np.abs(Omega - Omega.T)))
    r["lam_min"] = float(np.min(np.linalg.eigvalsh(
        0.5 * (Omega + Omega.T).imag)))
    r["leg1"] = float(np.max(np.abs(etaA.T @ B - A.T @ etaB - eye)))
    r["leg2"] = float(np.max(np.abs(B @ etaA.T - A @ etaB.T - eye)))
    r["sym_ab"] = float(np.max(np.abs(etaA @ etaB.T - (etaA @ etaB.T).T)))
    r["sym_a"] = float(np.max(np.abs(etaA.T @ A - (etaA.T @ A).T)))
    r["sym_b"] = float(np.max(np.abs(etaB.T @ B - (etaB.T @ B).T)))
    return Omega, r


def _certified(r):
    return (r is not None and "singular" not in r
            and r["sym"] <= TOL_SYM and r["lam_min"] > 0
            and max(r["leg1"], r["leg2"]) <= TOL_LEG
            and max(r["sym_ab"], r["sym_a"], r["sym_b"]) <= TOL_LEG)


def compute_period_data(f, ordering=None, tol=1e-12):
    """Full period data for the curve, certified before return.

    ordering optionally permutes the canonical branch-point order, which
    produces a different (but equally valid) symplectic basis; the
    functions built on top are invariant under this choice.
    """
    roots = branch_points(f)
    if ordering is not None:
        roots = [roots[k] for k in ordering]
    scale = max(1.0, max(abs(r) for r in roots))
    if not SCALE_BAND[0] <= max(abs(r) for r in roots) <= SCALE_BAND[1]:
        warnings.warn("branch points far outside unit scale; double "
                      "precision certificates may degrade", stacklevel=2)
    cs = build_cycles(f, ordering=ordering)
    W = elementary_cycle_integrals(f, roots, cs.pairs, tol=tol)

    best = None
    for signs in product([1], [1, -1], [1, -1], [1, -1]):
        for swap in (False, True):
            T = cs.transform @ np.diag(signs)
            if swap:
                T = _SWAP @ T
            P = T @ W
            A = P[:2, :2].T.copy()
            B = P[2:, :2].T.copy()
            etaA = -P[:2, 2:].T.copy()
            etaB = -P[2:, 2:].T.copy()
            Omega, r = _residuals(A, B, etaA, etaB)
            if _certified(r):
                best = (A, B, etaA, etaB, Omega, T)
                break
        if best:
            break
    if best is None:
        raise RiemannMatrixError(
            "no loop orientation yields a certified Riemann matrix; "
            "cycle construction is inconsistent for this curve")
    A, B, etaA, etaB, Omega, T = best
    cs = CycleSet(pairs=cs.pairs, cycles=cs.cycles,
                  intersection=cs.intersection, transform=T)

    z_star = None
    if f.degree == 6:
        z_star = infinity_to_infinity(f, roots, scale, tol=tol)
    Delta, char = _riemann_constant(f, A, Omega, roots, scale, z_star,
                                    tol=tol)
    for arr in (A, B, etaA, etaB, Omega, Delta):
        arr.setflags(write=False)
    return PeriodData(A=A, B=B, etaA=etaA, etaB=etaB, Omega=Omega,
                      Delta=Delta, delta_char=char, cycles=cs, f=f,
                      roots=tuple(roots), scale=scale, z_star=z_star)


# -- public single-form integration ------------------------------------------

_FORM_INDEX = {"omega1": 0, "omega2": 1, "r1": 2, "r2": 3}


@dataclass(frozen=True)
class BranchSegment:
    """Straight path between two branch points, by index into the canonical
    root order; integration handles the inverse-square-root endpoints."""
    i: int
    j: int


def integrate_differential(f, path, kind, tol=1e-12):
    """Integral of one named form (omega1|omega2|r1|r2) along a path.

    path is either a SheetPath (generic, endpoints off the branch locus)
    or a BranchSegment (endpoints at branch points, factored quadrature).
    """
    k = _FORM_INDEX[kind]
    if isinstance(path, BranchSegment):
        roots = branch_points(f)
        return complex(
            segment_period_integrals(f, roots, path.i, path.j, tol=tol)[k])
    return complex(integrate_forms(path, [all_numerators(f)[k]], tol=tol)[0])


# -- eta homomorphism and lattice reduction ----------------------------------

def eta_of_lattice(pd, m, n=None):
    """eta of the lattice vector w = A m + B n, from the period columns."""
    if n is None:
        flat = np.asarray(m, dtype=int).reshape(4)
        m, n = flat[:2], flat[2:]
    return pd.etaA @ np.asarray(m) + pd.etaB @ np.asarray(n)


def lattice_vector(pd, m, n=None):
    if n is None:
        flat = np.asarray(m, dtype=int).reshape(4)
        m, n = flat[:2], flat[2:]
    return pd.A @ np.asarray(m) + pd.B @ np.asarray(n)


def _generator_matrix(pd):
    G = np.zeros((4, 4))
    gens = np.hstack([pd.A, pd.B])
    G[:2] = gens.real
    G[2:] = gens.imag
    if np.linalg.cond(G) > COND_CAP:
        raise IllConditionedLatticeError(
            "period generators are numerically dependent")
    return G


@dataclass(frozen=True)
class LatticeReduction:
    z0: np.ndarray
    m: np.ndarray
    n: np.ndarray
    coords: np.ndarray


def lattice_reduce(pd, z):
    """z = z0 + A m + B n with fractional generator coordinates in [0, 1)
    (up to a snap tolerance at the upper edge)."""
    z = np.asarray(z, dtype=complex).reshape(2)
    G = _generator_matrix(pd)
    c = np.linalg.solve(G, np.concatenate([z.real, z.imag]))
    k = np.floor(c + 1e-9).astype(int)
    z0 = z - lattice_vector(pd, k[:2], k[2:])
    return LatticeReduction(z0=z0, m=k[:2], n=k[2:], coords=c - k)


def is_lattice(pd, z, tol=TOL_LAT):
    """Whether z is a period, measured by the nearest-lattice residual."""
    z = np.asarray(z, dtype=complex).reshape(2)
    G = _generator_matrix(pd)
    c = np.linalg.solve(G, np.concatenate([z.real, z.imag]))
    k = np.round(c)
    resid = G @ (c - k)
    return float(np.linalg.norm(resid)) <= tol * max(
        1.0, float(np.linalg.norm(G)))


def nearest_lattice_residual(pd, z):
    """Distance from z to the nearest lattice point, in z-space."""
    z = np.asarray(z, dtype=complex).reshape(2)
    G = _generator_matrix(pd)
    c = np.linalg.solve(G, np.concatenate([z.real, z.imag]))
    r = G @ (c - np.round(c))
    return float(np.hypot(np.linalg.norm(r[:2]), np.linalg.norm(r[2:])))


# -- Riemann constant ---------------------------------------------------------

def _abel_samples(f, A, roots, scale, z_star, count=8, tol=1e-12):
    """Normalized Abel images u = A^{-1} * integral from J(inf_1) to P for
    a deterministic fan of sample points P."""
    from .curve import CurvePoint
    us = []
    for k in range(count):
        x = 1.7 * scale * np.exp(2j * np.pi * (0.137 + 0.618034 * k))
        P = CurvePoint.affine(x, np.sqrt(complex(f(x))))
        J, landed_plus = point_infinity_integrals(f, roots, P, scale, tol=tol)
        z = J
        if f.degree == 6 and landed_plus:
            z = z + z_star
        us.append(np.linalg.solve(A, z))
    return us


def _half_period(Omega, n0, m0):
    return 0.5 * (np.asarray(n0, dtype=float)
                  + Omega @ np.asarray(m0, dtype=float))


def riemann_constant(f, pd):
    """Recompute Delta for existing period data (certificate included)."""
    Delta, _ = _riemann_constant(f, pd.A, pd.Omega, list(pd.roots), pd.scale,
                                 pd.z_star)
    return Delta


def _riemann_constant(f, A, Omega, roots, scale, z_star, tol=1e-12):
    tp = ThetaParams.build(Omega)
    us = _abel_samples(f, A, roots, scale, z_star, tol=tol)
    theta_ref = max(abs(theta_eval(tp, np.zeros(2))),
                    max(abs(theta_eval(tp, u)) for u in us))

    if f.degree == 5:
        hits = []
        for n0 in product((0, 1), (0, 1)):
            for m0 in product((0, 1), (0, 1)):
                if (n0[0] * m0[0] + n0[1] * m0[1]) % 2 == 0:
                    continue
                D = _half_period(Omega, n0, m0)
                resid = max(abs(theta_eval(tp, u - D)) for u in us)
                if resid < 1e-8 * theta_ref:
                    hits.append((D, (n0, m0)))
        if len(hits) != 1:
            raise DeltaAmbiguityError(
                f"{len(hits)} odd half-periods pass the vanishing "
                "certificate (expected exactly one)")
        return hits[0]

    sols = _newton_delta_seeds(tp, us, Omega, theta_ref)
    if not sols:
        D = _coarse_delta(tp, us, Omega, theta_ref)
        if D is None:
            raise DeltaAmbiguityError(
                "no vanishing-certificate solution for the base-point "
                "constant")
        sols = [D]
    uniq = [sols[0]]
    for D in sols[1:]:
        if all(not _u_lattice_close(Omega, D - E) for E in uniq):
            uniq.append(D)
    if len(uniq) > 1:
        raise DeltaAmbiguityError(
            f"{len(uniq)} distinct base-point constants pass the "
            "vanishing certificate")
    return uniq[0], None


def _u_lattice_close(Omega, d, tol=1e-6):
    G = np.zeros((4, 4))
    gens = np.hstack([np.eye(2), Omega])
    G[:2] = gens.real
    G[2:] = gens.imag
    c = np.linalg.solve(G, np.concatenate([d.real, d.imag]))
    return bool(np.linalg.norm(G @ (c - np.round(c))) < tol)


def _newton_delta_seeds(tp, us, Omega, theta_ref):
    sols = []
    converged_any = False
    for n0 in product((0, 1), (0, 1)):
        for m0 in product((0, 1), (0, 1)):
            D = _half_period(Omega, n0, m0).astype(complex)
            ok = False
            for _ in range(50):
                G = np.array([theta_eval(tp, us[0] - D),
                              theta_eval(tp, us[1] - D)])
                if max(abs(G)) < 1e-12 * theta_ref:
                    ok = True
                    break
                J = np.zeros((2, 2), dtype=complex)
                for a in (0, 1):
                    jet = theta_jet(tp, us[a] - D, 1)
                    J[a, 0] = -jet[1, 0]
                    J[a, 1] = -jet[0, 1]
                try:
                    step = np.linalg.solve(J, G)
                except np.linalg.LinAlgError:
                    break
                if np.linalg.norm(step) > 4.0:
                    break
                D = D - step
            if not ok:
                continue
            converged_any = True
            resid = max(abs(theta_eval(tp, u - D)) for u in us[2:])
            if resid < 1e-8 * theta_ref:
                sols.append(D)
    if not sols and not converged_any:
        raise NewtonDivergence(
            "no half-period seed converged for the base-point constant")
    return sols


def _coarse_delta(tp, us, Omega, theta_ref):
    best, best_resid = None, np.inf
    grid = np.arange(0.0, 1.0, 0.1)
    for s1 in grid:
        for s2 in grid:
            for t1 in grid:
                for t2 in grid:
                    D = np.array([s1, s2]) + Omega @ np.array([t1, t2])
                    resid = max(abs(theta_eval(tp, u - D)) for u in us[:3])
                    if resid < best_resid:
                        best, best_resid = D, resid
    if best is None:
        return None
    D = best.astype(complex)
    for _ in range(80):
        G = np.array([theta_eval(tp, us[0] - D), theta_eval(tp, us[1] - D)])
        if max(abs(G)) < 1e-12 * theta_ref:
            break
        J = np.zeros((2, 2), dtype=complex)
        for a in (0, 1):
            jet = theta_jet(tp, us[a] - D, 1)
            J[a, 0] = -jet[1, 0]
            J[a, 1] = -jet[0, 1]
        try:
            D = D - np.linalg.solve(J, G)
        except np.linalg.LinAlgError:
            return None
    resid = max(abs(theta_eval(tp, u - D)) for u in us[2:])
    return D if resid < 1e-8 * theta_ref else None
