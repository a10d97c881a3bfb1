"""
Two commuting Hamiltonians
==========================

H1 generates the rotation of the fibre and H2 the scaling
(z, w) -> (e^{2s} z, e^{-3s} w). Both flows are explicit, so an RK4
integration of the vector fields serves as a cross-check.
"""

import math

import numpy as np

from pkahler import Profile, geometry, hamilton

np.set_printoptions(precision=6, suppress=True)
prof = Profile.quadratic(1.0)
p = geometry.point(0.5, 1.2, 0.3, -0.4)

print("H1, H2 at p:", hamilton.h1(p, prof), hamilton.h2(p, prof))

# The vector fields solved from omega(X, .) = dH agree with the closed forms
for name in ("h1", "h2"):
    print(name, "solved:", hamilton.field_by_solve(p, name, prof), "closed:", hamilton.field_closed_form(p, name))

print("{H1, H2}(p) =", hamilton.poisson(p, "h1", "h2", prof))

# Numerical vs exact flow over unit time
res = hamilton.integrate(p, lambda q: hamilton.field_closed_form(q, "h2"), 1.0, 200)
print("RK4 endpoint:", res.endpoint)
print("exact       :", hamilton.flow_h2(p, 1.0))
print("step-halving error estimate:", res.error_estimate)

# The rotation has period 2 pi; the scaling never returns
print("flow_h1(p, 2 pi) - p:", hamilton.flow_h1(p, 2 * math.pi) - p)
for s in (0.01, 0.1, 1.0):
    print(f"|flow_h2(p, {s}) - p| =", np.abs(hamilton.flow_h2(p, s) - p).max())

# Both flows are symplectic
rng = np.random.default_rng(1)
pts = geometry.random_points(rng, 20)
print("pullback residual of flow_h2(., 0.3):",
      hamilton.symplecto_residual(lambda q: hamilton.flow_h2(q, 0.3), pts, prof))
