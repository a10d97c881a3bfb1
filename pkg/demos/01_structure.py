"""
The pseudo-Kaehler structure on H^2 x C
=======================================

Points are (x, y, u, v) with z = x + iy in the upper half-plane and
w = u + iv in the fibre. Everything depends on the profile f only through
t = y^3 |w|^2.
"""

import numpy as np

from pkahler import Profile, geometry

np.set_printoptions(precision=4, suppress=True)
prof = Profile.linear(1.0)  # f(t) = -t

# On the zero section the metric splits into the hyperbolic plane and a
# negative definite fibre block.
p0 = geometry.point(0.0, 1.0)
print("g at (i, 0):\n", geometry.metric(p0, prof))

# Off the zero section the blocks mix.
p1 = geometry.point(0.0, 1.0, 1.0, 0.0)
print("g at (i, 1):\n", geometry.metric(p1, prof))
print("omega at (i, 1):\n", geometry.symplectic(p1, prof))

# omega(X, Y) = g(X, IY), I^2 = -1, g is I-invariant, and the signature is (2, 2)
rng = np.random.default_rng(0)
worst = max(geometry.compatibility_residuals(p, prof).max_continuous() for p in geometry.random_points(rng, 100))
print("largest compatibility residual over 100 points:", worst)
print("signature at (i, 1):", geometry.signature(geometry.metric(p1, prof)))

# omega is closed; a perturbed form is not, which shows the check has teeth
print("|d omega| at (2+i, 1+i):", geometry.d_omega_residual([2.0, 1.0, 1.0, 1.0], prof))


def perturbed(q):
    w = geometry.symplectic(q, prof)
    w[2, 3] *= 1.0 / q[1]
    w[3, 2] = -w[2, 3]
    return w


print("|d omega'| for a perturbed form:", geometry.d_omega_residual([0.0, 1.3, 1.0, 0.0], prof, form=perturbed))
