"""Genus-2 Riemann theta function and its partial derivatives to order 3.

theta(z; Omega) = sum over n in Z^2 of exp(i pi n.Omega.n + 2 pi i n.z).

Evaluation strategy: reduce z by integer and Omega-integer shifts so the
imaginary part is small, sum the series over a box whose radius comes from
a provable tail bound, then push the quasi-periodicity prefactor through
the requested derivatives with the Leibniz rule.  Everything is
deterministic; there is no cross-call caching beyond the parameter object.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import RiemannMatrixError, TruncationRadiusError

TAIL_MARGIN = 100.0   # constant C in the tail bound ln(C/eps)
RADIUS_CAP = 60


@dataclass(frozen=True)
class ThetaParams:
    """Riemann matrix plus the derived quantities the series needs."""
    Omega: np.ndarray
    eps_target: float
    lam_min: float

    @classmethod
    def build(cls, Omega, eps_target=1e-12, tol_sym=1e-8):
        Om = np.array(Omega, dtype=complex)
        if Om.shape != (2, 2):
            raise ValueError("Omega must be 2x2")
        asym = np.max(np.abs(Om - Om.T))
        if asym > tol_sym * max(1.0, np.max(np.abs(Om))):
            raise RiemannMatrixError(
                f"Omega not symmetric: |Om - Om^T| = {asym:.2e}")
        Om = 0.5 * (Om + Om.T)
        lam = float(np.min(np.linalg.eigvalsh(Om.imag)))
        if lam <= 0:
            raise RiemannMatrixError(
                f"Im Omega not positive definite (lam_min={lam:.2e})")
        Om.setflags(write=False)
        return cls(Omega=Om, eps_target=float(eps_target), lam_min=lam)


def _radius(tp, b, order):
    """Smallest R with pi*lam*R^2 - 2 pi b R - order*ln(2 pi R) >= ln(C/eps)."""
    target = np.log(TAIL_MARGIN / tp.eps_target)
    lam = tp.lam_min
    R = 3.0
    for _ in range(12):
        R = np.sqrt((target + 2 * np.pi * b * R
                     + order * np.log(max(2 * np.pi * R, 3.0))) / (np.pi * lam))
    R = int(np.ceil(R)) + 1
    if R > RADIUS_CAP:
        raise TruncationRadiusError(
            f"summation radius {R} exceeds cap {RADIUS_CAP}; "
            "Omega is too close to degenerate")
    return R


def theta_jet(tp, z, order):
    """All partial derivatives of theta at z up to total order `order`.

    Returns a complex array J of shape (order+1, order+1) where J[k1, k2] =
    d^(k1+k2) theta / dz1^k1 dz2^k2, valid for k1 + k2 <= order.
    """
    if order > 3:
        raise ValueError("jets implemented up to order 3")
    z = np.asarray(z, dtype=complex).reshape(2)
    Om = tp.Omega
    # range reduction z = z0 + n + Omega m, with m, n integer vectors
    m = np.round(np.linalg.solve(Om.imag, z.imag))
    zm = z - Om @ m
    n = np.round(zm.real)
    z0 = zm - n
    b = float(np.linalg.norm(z0.imag))
    R = _radius(tp, b, order)

    rng = np.arange(-R, R + 1)
    n1, n2 = np.meshgrid(rng, rng, indexing="ij")
    nn = np.stack([n1.ravel(), n2.ravel()], axis=1).astype(float)
    quad = np.einsum("ki,ij,kj->k", nn, Om, nn)
    expo = 1j * np.pi * quad + 2j * np.pi * (nn @ z0)
    w = np.exp(expo)

    two_pi_i = 2j * np.pi
    p1 = np.ones((len(nn), order + 1), dtype=complex)
    p2 = np.ones((len(nn), order + 1), dtype=complex)
    for k in range(1, order + 1):
        p1[:, k] = p1[:, k - 1] * (two_pi_i * nn[:, 0])
        p2[:, k] = p2[:, k - 1] * (two_pi_i * nn[:, 1])

    J0 = np.zeros((order + 1, order + 1), dtype=complex)
    for k1 in range(order + 1):
        for k2 in range(order + 1 - k1):
            J0[k1, k2] = np.sum(w * p1[:, k1] * p2[:, k2])

    if not np.any(m):
        return J0
    # theta(z) = e(z0) theta(z0) with e = exp(-i pi m.Om.m - 2 pi i m.z0);
    # d/dz e = (-2 pi i m) e, so derivatives mix by the Leibniz rule.
    e = np.exp(-1j * np.pi * (m @ Om @ m) - two_pi_i * (m @ z0))
    mu = -two_pi_i * m
    J = np.zeros_like(J0)
    for k1 in range(order + 1):
        for k2 in range(order + 1 - k1):
            acc = 0j
            for b1 in range(k1 + 1):
                for b2 in range(k2 + 1):
                    acc += (comb(k1, b1) * comb(k2, b2)
                            * mu[0] ** b1 * mu[1] ** b2
                            * J0[k1 - b1, k2 - b2])
            J[k1, k2] = e * acc
    return J


def theta_eval(tp, z):
    """theta(z; Omega), truncation error below tp.eps_target."""
    return theta_jet(tp, z, 0)[0, 0]


def theta_deriv(tp, z, multi_index):
    """Partial derivative d^(k1+k2) theta / dz1^k1 dz2^k2 at z."""
    k1, k2 = multi_index
    if k1 < 0 or k2 < 0 or k1 + k2 > 3:
        raise ValueError("multi_index must be nonnegative with k1 + k2 <= 3")
    return theta_jet(tp, z, k1 + k2)[k1, k2]
