"""Group actions on H^2 x C: SL(2,R), the fibre circle, the two flips, and moment maps.

Also recovers the parameters (A, theta, flips) of a black-box map of the form
A o e^{i theta} o h1^a o h2^b from its 1-jet at (i, 0).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .exceptions import DomainError, NotCanonicalIsometryError
from .geometry import check_point, fibre_norm2, metric, pullback, random_points, symplectic
from .numerics import derivative, jacobian

TWO_PI = 2.0 * math.pi


def sl2(a, b, c, d, tol=1e-12):
    """A 2x2 real matrix checked to have determinant 1."""
    A = np.array([[a, b], [c, d]], dtype=float)
    det = a * d - b * c
    if abs(det - 1.0) > tol:
        raise ValueError(f"det = {det!r} is not 1")
    return A


@dataclass(frozen=True)
class IsometryElement:
    """A o e^{i theta} o h1^{flip1} o h2^{flip2}; flips act first."""

    A: np.ndarray
    theta: float = 0.0
    flip1: bool = False
    flip2: bool = False

    @classmethod
    def identity(cls):
        return cls(np.eye(2))


def sl2_apply(A, p):
    """(z, w) -> ((az + b)/(cz + d), (cz + d)^3 w)."""
    check_point(p)
    (a, b), (c, d) = A
    z = complex(p[0], p[1])
    w = complex(p[2], p[3])
    j = c * z + d
    z2 = (a * z + b) / j
    w2 = j**3 * w
    return np.array([z2.real, z2.imag, w2.real, w2.imag])


def circle_apply(theta, p):
    """(z, w) -> (z, e^{i theta} w)."""
    x, y, u, v = p
    c, s = math.cos(theta), math.sin(theta)
    return np.array([x, y, u * c - v * s, u * s + v * c])


def flip1(p):
    """h1(z, w) = (-conj(z), w)."""
    x, y, u, v = p
    return np.array([-x, y, u, v])


def flip2(p):
    """h2(z, w) = (z, conj(w))."""
    x, y, u, v = p
    return np.array([x, y, u, -v])


def isometry_apply(e, p):
    q = np.asarray(p, dtype=float)
    if e.flip2:
        q = flip2(q)
    if e.flip1:
        q = flip1(q)
    q = circle_apply(e.theta, q)
    return sl2_apply(e.A, q)


def j_map(x, y):
    """The Kaehler isometry H^2 -> {J : J^2 = -1}, j(i) = [[0, -1], [1, 0]]."""
    if not y > 0:
        raise DomainError(f"j_map needs y > 0, got {y!r}")
    return np.array([[x / y, -(x * x + y * y) / y], [1.0 / y, -x / y]])


def base_transitive(z):
    """Upper-triangular Q in SL(2,R) with Q . i = z."""
    z = complex(z)
    x, y = z.real, z.imag
    if not y > 0:
        raise DomainError(f"base point {z!r} not in the upper half-plane")
    r = math.sqrt(y)
    return np.array([[r, x / r], [0.0, 1.0 / r]])


def moment_map(p, X, profile):
    """<mu(z, w), X> = (1 - f(y^3 |w|^2)) tr(j(z) X)."""
    check_point(p)
    X = np.asarray(X, dtype=float)
    if abs(np.trace(X)) > 1e-12:
        raise ValueError("Lie algebra element must be traceless")
    return (1.0 - profile.f(fibre_norm2(p))) * float(np.trace(j_map(p[0], p[1]) @ X))


def infinitesimal_generator(p, X, h=1e-5):
    """d/ds exp(sX) . p at s = 0, by central differences in s."""
    X = np.asarray(X, dtype=float)
    return derivative(lambda s: sl2_apply(expm(s * X), p), 0.0, h)


def moment_residual(p, X, profile, h=1e-5):
    """|d mu^X - omega(V_X, .)|_inf with both sides from finite differences."""
    p = np.asarray(p, dtype=float)
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        return 0.0
    dmu = jacobian(lambda q: np.array([moment_map(q, X, profile)]), p, h)[0]
    V = infinitesimal_generator(p, X, h)
    return float(np.abs(dmu - V @ symplectic(p, profile)).max())


def normal_form(p):
    """(u_norm, e) with e mapping (i, u_norm, 0) to p and u_norm = y^{3/2} |w|."""
    check_point(p)
    x, y, u, v = p
    u_norm = math.sqrt(fibre_norm2(p))
    theta = math.atan2(v, u) % TWO_PI if u_norm > 0 else 0.0
    return u_norm, IsometryElement(base_transitive(complex(x, y)), theta)


def isometry_residual(e, samples, profile):
    """max over samples of |e^* g_f - g_f|_inf."""
    form = lambda q: metric(q, profile)
    worst = 0.0
    for p in samples:
        p = np.asarray(p, dtype=float)
        pulled = pullback(lambda q: isometry_apply(e, q), p, form)
        worst = max(worst, float(np.abs(pulled - form(p)).max()))
    return worst


def _rotation_angle(M):
    """Angle of the rotation closest to a 2x2 conformal matrix."""
    return math.atan2(M[1, 0] - M[0, 1], M[0, 0] + M[1, 1])


def canonical_sign(A):
    """Representative of +-A with positive upper-left entry (upper-right if that vanishes)."""
    lead = A[0, 0] if abs(A[0, 0]) > 1e-12 else A[0, 1]
    return A if lead > 0 else -A


def recover_parameters(h, rng=None, n_check=20, tol=1e-6, step=1e-5):
    """Recover (A, theta, flip1, flip2) from a black-box map h.

    The image of (i, 0) fixes A up to the stabiliser SO(2) of i; the
    horizontal block of dh at (i, 0) fixes the stabiliser angle (mod pi) and
    the orientation of the base; the vertical block gives theta and the
    orientation of the fibre. The answer is checked against h at ``n_check``
    random points.
    """
    origin = np.array([0.0, 1.0, 0.0, 0.0])
    img = np.asarray(h(origin), dtype=float)
    if abs(img[2]) + abs(img[3]) > 1e-9:
        raise NotCanonicalIsometryError("h does not preserve the zero section at (i, 0)")
    x1, y1 = img[0], img[1]
    Q = base_transitive(complex(x1, y1))
    J = jacobian(h, origin, step)

    horiz = J[:2, :2] / y1  # = R(-2 phi) F1
    is_flip1 = np.linalg.det(horiz) < 0
    if is_flip1:
        horiz = horiz @ np.diag([-1.0, 1.0])
    phi = -0.5 * _rotation_angle(horiz)
    K = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])

    vert = J[2:, 2:] * y1**1.5  # = R(3 phi + theta) F2
    is_flip2 = np.linalg.det(vert) < 0
    if is_flip2:
        vert = vert @ np.diag([1.0, -1.0])
    theta = _rotation_angle(vert) - 3.0 * phi

    A = Q @ K
    A_c = canonical_sign(A)
    if A_c is not A:
        theta += math.pi
    e = IsometryElement(A_c, theta % TWO_PI, bool(is_flip1), bool(is_flip2))

    if rng is None:
        rng = np.random.default_rng(0)
    for p in random_points(rng, n_check):
        err = np.abs(isometry_apply(e, p) - np.asarray(h(p), dtype=float)).max()
        if err > tol:
            raise NotCanonicalIsometryError(
                f"recovered element disagrees with h by {err:.3e} at {tuple(p.tolist())}"
            )
    return e


def parameter_error(e1, e2, probes=None):
    """Distance between two isometry elements' parameters.

    A is compared through its Moebius action on three probe points (so A and
    -A agree), theta modulo 2 pi, flips exactly (a mismatch returns inf).
    """
    if e1.flip1 != e2.flip1 or e1.flip2 != e2.flip2:
        return math.inf
    if probes is None:
        probes = (1j, 1.0 + 2.0j, -0.5 + 0.5j)
    err = 0.0
    for z in probes:
        p = np.array([z.real, z.imag, 0.0, 0.0])
        err = max(err, float(np.abs(sl2_apply(e1.A, p) - sl2_apply(e2.A, p))[:2].max()))
    # theta is only defined together with the sign of A
    t1 = e1.theta + (0.0 if canonical_sign(e1.A) is e1.A else math.pi)
    t2 = e2.theta + (0.0 if canonical_sign(e2.A) is e2.A else math.pi)
    d = (t1 - t2) % TWO_PI
    return max(err, min(d, TWO_PI - d))
