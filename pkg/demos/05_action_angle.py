"""
A global Darboux chart
======================

H = (H1, H2) is a Lagrangian fibration over B = {b1 < 0} with cylinder
fibres. A section sigma gives the chart

    (theta, h1, s, h2) -> flow_h2(flow_h1(sigma(h1, h2), theta), s),

which is Darboux exactly when sigma is Lagrangian. The obvious section is
not, and we fix it by flowing along X_H2 for a time found by quadrature.
"""

import math

import numpy as np

from pkahler import Profile, fibration

np.set_printoptions(precision=5, suppress=True)
prof = Profile.linear(1.0)
naive = fibration.SectionHandle("naive")
lagr = fibration.SectionHandle("lagrangianized", b1_ref=-1.0)

b = (-2 / 3, 0.0)
print("naive section at b:", fibration.naive_section(b, prof))
print("defect of the naive section:", fibration.section_defect(naive, b, prof), "(exact 3/8)")

a2 = fibration.correction_time(b, prof, b1_ref=-2.0)
print("correction time from b1_ref = -2:", a2, " exact -ln(2)/2 =", -0.5 * math.log(2))
print("defect after correction:", fibration.section_defect(lagr, b, prof))

p = fibration.chart_inverse((1.0, -1.2, 0.4, 2.0), lagr, prof)
print("chart(chart_inverse(c)):", fibration.chart(p, lagr, prof))

print("omega in the chart frame, lagrangianized section:\n", fibration.darboux_matrix(p, lagr, prof))
print("same with the naive section:\n", fibration.darboux_matrix(p, naive, prof))

lat = fibration.period_generator(b, prof)
print("period lattice generator:", (lat.per1, lat.per2), " rank:", lat.rank)
