"""
A walking tour on the Weierstrass-form quintic y^2 = 4x^5 - 4x.

Builds certified period data, evaluates the weight-2 family and the sigma
family, and prints the residual of each defining identity along the way.
"""

import numpy as np

import kleinian2 as k2

# the five branch points are 0, +-1, +-i; everything below is certified
# against the Legendre relations before the context is returned
f = k2.validate_polynomial([0, -4, 0, 0, 0, 4, 0])
ctx = k2.make_context(f)
pd = ctx.pd

print("curve: y^2 = 4x^5 - 4x")
print("branch points:", np.round(np.array(pd.roots), 6))
print("Omega =\n", np.round(pd.Omega, 6))

eye = 2j * np.pi * np.eye(2)
leg = np.max(np.abs(pd.etaA.T @ pd.B - pd.A.T @ pd.etaB - eye))
print(f"Legendre residual          : {leg:.2e}")
print(f"Im Omega min eigenvalue    : "
      f"{np.min(np.linalg.eigvalsh(pd.Omega.imag)):.6f}")

# -- the function family at one point ------------------------------------------

z = np.array([0.31 + 0.05j, -0.22 + 0.40j])
S = k2.S_eval(ctx, z)
S11, S12, S22 = k2.S_jk_eval(ctx, z)
p11, p12, p22 = k2.wp_eval(ctx, z)
sig = k2.sigma_eval(ctx, z)

print()
print("at z =", z)
print("  S    =", S)
print("  S11  =", S11)
print("  wp11 =", p11, " wp12 =", p12, " wp22 =", p22)
print(f"  sigma^2 - S               : {abs(sig ** 2 - S):.2e}")
print(f"  S11 - wp11 * S            : {abs(S11 - p11 * S):.2e}")
print(f"  sigma(z) + sigma(-z)      : "
      f"{abs(sig + k2.sigma_eval(ctx, -z)):.2e}   (odd)")

# the wp land on the Kummer quartic: the 4x4 determinant vanishes
print(f"  quartic det (scaled)      : "
      f"{k2.quartic_residual(f, p11, p12, p22):.2e}")

# -- Abel map round trip --------------------------------------------------------

D = k2.jacobi_invert(ctx, z)
print()
print("jacobi_invert(z) gives the divisor")
print("  x1 =", np.round(D.p.x, 8), " x2 =", np.round(D.q.x, 8))
back = k2.abel_forward(ctx, D)
print(f"  abel_forward residual mod periods: "
      f"{k2.nearest_lattice_residual(pd, back - z):.2e}")

# the two-point functions of the divisor match wp at z
xi = k2.xi_eval(f, D)
print(f"  max |wp - xi|             : "
      f"{max(abs(a - b) for a, b in zip((p11, p12, p22), xi)):.2e}")

# -- measured Taylor jets -------------------------------------------------------

jets = k2.measure_taylor_jets(ctx)
print()
print("order-2 jets at 0 (measured, not asserted):")
print(f"  S:   d^2/dz1^2 = {jets['S']['20']:.12f}   (2 expected)")
print(f"  S11: value     = {jets['S11']['00']:.12f}   (1 expected)")
print(f"  S22: d^2/dz1dz2= {jets['S22']['11']:.12f}   (2 expected)")
print(f"  S12: d^2/dz2^2 = {jets['S12']['02']:.12f}   (-2 expected)")
