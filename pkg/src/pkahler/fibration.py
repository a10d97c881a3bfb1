"""The Lagrangian fibration H = (H1, H2), Lagrangian sections and action-angle charts.

The base is B = {b1 < 0}. A naive section is corrected into a Lagrangian one
by flowing along X_H2 for a time a2(b) obtained by integrating the naive
section's symplectic defect in b1. With a Lagrangian section the chart
(theta, H1, s, H2) -> flow_h2(flow_h1(sigma(H), theta), s) is a global
Darboux chart: omega(d_theta, d_H1) = omega(d_s, d_H2) = 1, all other
pairings zero.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import DomainError, OffFibrationError
from .geometry import symplectic
from .hamilton import flow_h1, flow_h2, h1, h2
from .numerics import adaptive_simpson

TWO_PI = 2.0 * math.pi

# Pairings in the frame (d_theta, d_H1, d_s, d_H2)
CANONICAL = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class SectionHandle:
    kind: str = "lagrangianized"  # or "naive"
    b1_ref: float = -1.0
    tol: float = 1e-9

    def __post_init__(self):
        if self.kind not in ("naive", "lagrangianized"):
            raise ValueError(f"unknown section kind {self.kind!r}")
        if not self.b1_ref < 0:
            raise ValueError("b1_ref must be negative")


class ActionAngle(NamedTuple):
    theta: float
    h1: float
    s: float
    h2: float


def _check_base(b):
    b1, b2 = b
    if not b1 < 0:
        raise DomainError(f"base point {b!r} outside B = {{b1 < 0}}")
    return float(b1), float(b2)


def project(p, profile):
    """H(p) = (H1(p), H2(p)); undefined on the zero section."""
    if p[2] == 0 and p[3] == 0:
        raise OffFibrationError(f"point {tuple(np.asarray(p).tolist())} lies on w = 0")
    return float(h1(p, profile)), float(h2(p, profile))


def naive_section(b, profile):
    """Right inverse of H in the gauge y = 1, v = 0, u > 0."""
    b1, b2 = _check_base(b)
    t = profile.inverse(1.5 * b1)
    x = b2 / (2.0 * (1.0 - 1.5 * b1))
    return np.array([x, 1.0, math.sqrt(t), 0.0])


def _pairing(sec_fn, b, profile, step):
    """(sigma^* omega)(d_b1, d_b2) for a section given as a callable."""
    b1, b2 = b
    h = step * max(1.0, abs(b1))
    # keep the stencil inside B
    h = min(h, 0.5 * abs(b1))
    d1 = (sec_fn((b1 + h, b2)) - sec_fn((b1 - h, b2))) / (2.0 * h)
    k = step * max(1.0, abs(b2))
    d2 = (sec_fn((b1, b2 + k)) - sec_fn((b1, b2 - k))) / (2.0 * k)
    return float(d1 @ symplectic(sec_fn(b), profile) @ d2)


def naive_defect(b, profile, step=1e-5):
    """Defect (sigma0^* omega)(d_b1, d_b2) of the naive section."""
    b = _check_base(b)
    return _pairing(lambda c: naive_section(c, profile), b, profile, step)


def correction_time(b, profile, b1_ref=-1.0, tol=1e-9):
    """a2(b) = -int_{b1_ref}^{b1} defect_naive(tau, b2) d tau, by adaptive Simpson."""
    b1, b2 = _check_base(b)
    return -adaptive_simpson(lambda tau: naive_defect((tau, b2), profile), b1_ref, b1, tol)


def lagrangianize(b, profile, b1_ref=-1.0, tol=1e-9):
    """Lagrangian section sigma(b) = flow_h2(naive_section(b), a2(b))."""
    return flow_h2(naive_section(b, profile), correction_time(b, profile, b1_ref, tol))


def section_point(sec, b, profile):
    if sec.kind == "naive":
        return naive_section(b, profile)
    return lagrangianize(b, profile, sec.b1_ref, sec.tol)


def section_defect(sec, b, profile, step=None):
    """(sigma^* omega_f)(d_b1, d_b2); zero exactly when the section is Lagrangian.

    The default step is 1e-5 for the naive section and 1e-3 for the
    lagrangianized one, whose b1-dependence carries quadrature noise of order
    ``sec.tol`` that a smaller step would amplify.
    """
    b = _check_base(b)
    if step is None:
        step = 1e-5 if sec.kind == "naive" else 1e-3
    return _pairing(lambda c: section_point(sec, c, profile), b, profile, step)


def chart(p, sec, profile):
    """Action-angle coordinates (theta, H1, s, H2) of p relative to the section ``sec``."""
    b = project(p, profile)
    q = section_point(sec, b, profile)
    s = 0.5 * math.log(p[1] / q[1])
    theta = (math.atan2(p[3], p[2]) - math.atan2(q[3], q[2])) % TWO_PI
    return ActionAngle(theta, b[0], s, b[1])


def chart_inverse(c, sec, profile):
    """flow_h2(flow_h1(sigma(H1, H2), theta), s)."""
    theta, b1, s, b2 = c
    q = section_point(sec, (b1, b2), profile)
    return flow_h2(flow_h1(q, theta), s)


def darboux_matrix(p, sec, profile, step=1e-4):
    """M[a, b] = omega_f(E_a, E_b) for the chart frame E = (d_theta, d_H1, d_s, d_H2) at p."""
    c = np.array(chart(p, sec, profile), dtype=float)
    frame = []
    for a in range(4):
        h = step * max(1.0, abs(c[a]))
        if a == 1:
            h = min(h, 0.5 * abs(c[1]))
        e = np.zeros(4)
        e[a] = h
        frame.append((chart_inverse(c + e, sec, profile) - chart_inverse(c - e, sec, profile)) / (2.0 * h))
    E = np.array(frame)
    base = chart_inverse(c, sec, profile)
    return E @ symplectic(base, profile) @ E.T


def darboux_residual(M):
    return float(np.abs(M - CANONICAL).max())


class PeriodLattice(NamedTuple):
    per1: float  # generator of the period lattice in the dH1 direction
    per2: float  # generator in the dH2 direction (0: no period)
    rank: int
    return_distance: float  # |flow_h1(sigma, per1) - sigma|
    min_h2_distance: float  # min over scanned s of |flow_h2(sigma, s) - sigma|


def period_generator(b, profile, s_scan=None, sec=None):
    """Period lattice at b: generated by 2 pi dH1, with no period along X_H2.

    The circle flow is checked to return after 2 pi and the X_H2 flow is
    scanned on s in [1e-3, 10] for near returns (a near return closer than
    1e-3 would count as a second period).
    """
    if sec is None:
        sec = SectionHandle("naive")
    q = section_point(sec, b, profile)
    if s_scan is None:
        s_scan = np.geomspace(1e-3, 10.0, 400)
    ret = float(np.abs(flow_h1(q, TWO_PI) - q).max())
    dmin = min(float(np.abs(flow_h2(q, s) - q).max()) for s in s_scan)
    rank = int(ret <= 1e-12) + int(dmin < 1e-3)
    return PeriodLattice(TWO_PI, 0.0, rank, ret, dmin)
