"""Numerical engine for a family of SL(2,R)-invariant pseudo-Kaehler structures on H^2 x C.

Modules:

* ``profile``: profile functions f and their validation
* ``geometry``: metric, symplectic form and complex structure matrices
* ``hamilton``: the integrals H1, H2, their fields and flows
* ``actions``: SL(2,R), circle and flip actions, moment maps, isometry recovery
* ``curvature``: closed-form and numerical Ricci and scalar curvature
* ``fibration``: Lagrangian sections and the global action-angle chart
"""

from . import actions, curvature, fibration, geometry, hamilton, numerics
from .exceptions import (
    DivergenceError,
    DomainError,
    DomainExitError,
    NotCanonicalIsometryError,
    OffFibrationError,
    QuadratureError,
)
from .profile import Profile

__version__ = "0.1.0"

__all__ = [
    "Profile",
    "actions",
    "curvature",
    "fibration",
    "geometry",
    "hamilton",
    "numerics",
    "DivergenceError",
    "DomainError",
    "DomainExitError",
    "NotCanonicalIsometryError",
    "OffFibrationError",
    "QuadratureError",
]
