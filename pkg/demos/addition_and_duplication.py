"""
The sigma function's addition and duplication laws, checked numerically.

Both identities involve only values and derivatives of sigma, so they make
a good end-to-end exercise of the jets machinery.
"""

import numpy as np

import kleinian2 as k2

f = k2.validate_polynomial([0, -4, 0, 0, 0, 4, 0])
ctx = k2.make_context(f)
rng = np.random.default_rng(42)


def random_z():
    while True:
        t = rng.uniform(-0.5, 0.5, 4)
        z = ctx.pd.A @ t[:2] + ctx.pd.B @ t[2:]
        if k2.divisor_clearance(ctx, z) > 1e-2:
            return z


# -- addition: a ratio of sigmas equals a polynomial in wp ----------------------

print("sigma(u+v) sigma(u-v) / (sigma(u)^2 sigma(v)^2)")
print("  = wp22(u) wp12(v) - wp22(v) wp12(u) + wp11(v) - wp11(u)")
print()
for k in range(3):
    u, v = random_z(), random_z()
    lhs = (k2.sigma_eval(ctx, u + v) * k2.sigma_eval(ctx, u - v)
           / (k2.sigma_eval(ctx, u) ** 2 * k2.sigma_eval(ctx, v) ** 2))
    pu, pv = k2.wp_eval(ctx, u), k2.wp_eval(ctx, v)
    rhs = pu[2] * pv[1] - pv[2] * pu[1] + pv[0] - pu[0]
    print(f"  trial {k}: lhs = {lhs:.10f}")
    print(f"           rhs = {rhs:.10f}   |diff| = {abs(lhs - rhs):.2e}")

# -- duplication: sigma(2z) from third-order jets at z ---------------------------

print()
print("sigma(2z) = S12 d1S22 - S22 d1S12 + S11 d1S - S d1S11")
print("  with every factor built from jets of sigma at z")
print()
for k in range(3):
    z = random_z()
    j = k2.sigma_jets(ctx, z, order=3)
    s, s1, s2 = j[(0, 0)], j[(1, 0)], j[(0, 1)]
    s11, s12, s22 = j[(2, 0)], j[(1, 1)], j[(0, 2)]
    s111, s112, s122 = j[(3, 0)], j[(2, 1)], j[(1, 2)]
    rhs = ((s1 * s2 - s * s12) * (2 * s12 * s2 - s1 * s22 - s * s122)
           - (s2 * s2 - s * s22) * (s11 * s2 - s * s112)
           + (s1 * s1 - s * s11) * (2 * s * s1)
           - s ** 2 * (s1 * s11 - s * s111))
    lhs = k2.sigma_eval(ctx, 2 * z)
    print(f"  trial {k}: sigma(2z) = {lhs:.10f}   |diff| = {abs(lhs - rhs):.2e}")
