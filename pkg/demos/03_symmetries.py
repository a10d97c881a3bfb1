"""
Symmetries, moment maps and isometry recovery
=============================================

SL(2,R) acts by ((az+b)/(cz+d), (cz+d)^3 w) and the circle rotates w.
Both preserve the structure. The moment map of the diagonal subgroup is H2.
"""

import numpy as np

from pkahler import Profile, actions, geometry, hamilton
from pkahler.actions import IsometryElement

np.set_printoptions(precision=6, suppress=True)
prof = Profile.linear(1.0)
rng = np.random.default_rng(3)
pts = geometry.random_points(rng, 30)

A = actions.sl2(2.0, 1.0, 1.0, 1.0)
print("isometry residual of A o e^{0.7 i}:", actions.isometry_residual(IsometryElement(A, 0.7), pts, prof))

# Moment maps: d mu^X = omega(V_X, .)
X = np.diag([1.0, -1.0])
p = pts[0]
print("moment residual:", actions.moment_residual(p, X, prof))
print("mu^diag(p) =", actions.moment_map(p, X, prof), " H2(p) =", hamilton.h2(p, prof))

# The conjugations h1(z, w) = (-conj z, w) and h2(z, w) = (z, conj w) are
# anti-holomorphic. Their product preserves g, but each one alone flips the
# sign of the block coupling base and fibre, so it does not.
for f1, f2 in ((True, True), (True, False), (False, True)):
    e = IsometryElement(np.eye(2), 0.0, f1, f2)
    print(f"flips ({int(f1)}, {int(f2)}): isometry residual", actions.isometry_residual(e, pts, prof))

# Recover the parameters of a map given only as a black box
secret = IsometryElement(actions.sl2(0.5, -1.0, 0.5, 1.0), 2.5, True, True)
black_box = lambda q: actions.isometry_apply(secret, q)
found = actions.recover_parameters(black_box)
print("recovered A:\n", found.A)
print("recovered theta:", found.theta, " flips:", found.flip1, found.flip2)
print("parameter error:", actions.parameter_error(secret, found))

# Every point is the image of a normal form (i, u)
u, e = actions.normal_form(p)
print("normal form of p: u =", u, " check:", actions.isometry_apply(e, [0.0, 1.0, u, 0.0]) - p)
