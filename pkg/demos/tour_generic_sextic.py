"""
The generic sextic y^2 = x^6 - 1: two points at infinity, no sigma.

Shows the infinity bookkeeping of the Abel map, the near-divisor behaviour
of the weight-2 functions, and the failure of the wp_jk to glue to a single
potential (which is what separates weight 2 from the classical theory).
"""

import numpy as np

import kleinian2 as k2

f = k2.validate_polynomial([-1, 0, 0, 0, 0, 0, 1])
ctx = k2.make_context(f)
pd = ctx.pd

print("curve: y^2 = x^6 - 1  (degree 6: two points at infinity)")
print("z* = integral from infty_2 to infty_1 =", np.round(pd.z_star, 8))

# Abel images of divisors that involve the infinite points
inf1, inf2 = k2.CurvePoint.at_infinity(1), k2.CurvePoint.at_infinity(2)
x = 1.9 + 0.7j
P = k2.CurvePoint(x, np.sqrt(f(x)))
z1 = k2.abel_forward(ctx, k2.Divisor(P, inf1))
z2 = k2.abel_forward(ctx, k2.Divisor(P, inf2))
print(f"image((P, inf1)) - image((P, inf2)) - z* mod periods: "
      f"{k2.nearest_lattice_residual(pd, z1 - z2 - pd.z_star):.2e}")

# -- weight-2 family near and on the zero set of S ------------------------------

print()
print("S and S_jk at the origin (a point of the zero set of S):")
print("  S(0)   =", abs(k2.S_eval(ctx, np.zeros(2))))
print("  S11(0) =", k2.S_jk_eval(ctx, np.zeros(2))[0], "  (stays finite: entire)")
try:
    k2.wp_eval(ctx, np.zeros(2))
except k2.OnThetaDivisorError as exc:
    print("  wp_eval(0) raises", type(exc).__name__, "(poles live here)")

# walking into the zero set: S22 stays smooth even where wp22 blows up
z = np.array([0.31 + 0.05j, -0.22 + 0.40j])
print()
print("S22 along the ray t*z into the origin:")
for t in (1.0, 0.1, 0.01, 1e-4):
    zt = t * z
    s22 = k2.S_jk_eval(ctx, zt)[2]
    print(f"  t = {t:<7g} S22 = {s22:.10f}")

# -- the quartic and the round trip ---------------------------------------------

rng = np.random.default_rng(7)
t = rng.uniform(-0.5, 0.5, 4)
z = pd.A @ t[:2] + pd.B @ t[2:]
p11, p12, p22 = k2.wp_eval(ctx, z)
print()
print(f"random z: scaled quartic determinant = "
      f"{k2.quartic_residual(f, p11, p12, p22):.2e}")
D = k2.jacobi_invert(ctx, z)
back = k2.abel_forward(ctx, D)
print(f"inversion round trip residual        = "
      f"{k2.nearest_lattice_residual(pd, back - z):.2e}")

# -- no single potential --------------------------------------------------------

h = 1e-5
e1, e2 = np.eye(2)
d11_2 = (k2.wp_eval(ctx, z + h * e2)[0] - k2.wp_eval(ctx, z - h * e2)[0]) / (2 * h)
d12_1 = (k2.wp_eval(ctx, z + h * e1)[1] - k2.wp_eval(ctx, z - h * e1)[1]) / (2 * h)
print()
print("d(wp11)/dz2 vs d(wp12)/dz1 (equal for a quintic, not here):")
print(f"  |difference| = {abs(d11_2 - d12_1):.6f}   (non-integrability witness)")
