"""The pseudo-Kaehler triple (g_f, I, omega_f) on H^2 x C as 4x4 matrices.

Points are arrays ``(x, y, u, v)`` with z = x + iy in the upper half-plane and
w = u + iv in the fibre. Every matrix is written in the basis
(d/dx, d/dy, d/du, d/dv).
"""

from typing import NamedTuple

import numpy as np

from .exceptions import DomainError
from .numerics import jacobian, partials

COMPLEX_STRUCTURE = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)


def point(x, y, u=0.0, v=0.0):
    """Build an ambient point, rejecting y <= 0."""
    p = np.array([x, y, u, v], dtype=float)
    check_point(p)
    return p


def check_point(p):
    if not p[1] > 0:
        raise DomainError(f"point {tuple(np.asarray(p).tolist())} has y <= 0")


def fibre_norm2(p):
    """t = Im(z)^3 |w|^2, the squared fibre norm the whole structure depends on."""
    x, y, u, v = p
    return y**3 * (u * u + v * v)


def metric(p, profile):
    """g_f at p."""
    check_point(p)
    x, y, u, v = p
    f, f1, _, _ = profile.eval(fibre_norm2(p))
    y2 = y * y
    a = (1.0 - f + 3.0 * (u * u + v * v) * y**3 * f1) / y2
    c = 2.0 * f1 * y2
    d = 4.0 / 3.0 * f1 * y**3
    return np.array(
        [
            [a, 0.0, c * v, -c * u],
            [0.0, a, c * u, c * v],
            [c * v, c * u, d, 0.0],
            [-c * u, c * v, 0.0, d],
        ]
    )


def symplectic(p, profile):
    """omega_f at p, as the antisymmetric matrix omega(e_a, e_b)."""
    check_point(p)
    x, y, u, v = p
    f, f1, _, _ = profile.eval(fibre_norm2(p))
    y2 = y * y
    w = np.zeros((4, 4))
    w[0, 1] = (-1.0 + f - 3.0 * f1 * y**3 * (u * u + v * v)) / y2
    w[2, 3] = -4.0 / 3.0 * f1 * y**3
    w[0, 2] = -2.0 * y2 * f1 * u
    w[1, 3] = -2.0 * y2 * f1 * u
    w[2, 1] = -2.0 * y2 * f1 * v
    w[3, 0] = 2.0 * y2 * f1 * v
    return w - w.T


def complex_structure(p=None):
    """I, the standard complex structure on both factors (constant in these coordinates)."""
    return COMPLEX_STRUCTURE.copy()


class CompatibilityResiduals(NamedTuple):
    complex_square: float  # |I^2 + Id|
    metric_invariance: float  # |g(I., I.) - g|
    form_compatibility: float  # |omega(., .) - g(., I.)|
    signature_defect: int  # |n_+ - 2| + |n_- - 2|

    def max_continuous(self):
        return max(self.complex_square, self.metric_invariance, self.form_compatibility)


def signature(matrix):
    """(n_positive, n_negative) eigenvalue counts of a symmetric matrix."""
    ev = np.linalg.eigvalsh(matrix)
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def compatibility_residuals(p, profile):
    g = metric(p, profile)
    w = symplectic(p, profile)
    J = complex_structure(p)
    npos, nneg = signature(g)
    return CompatibilityResiduals(
        complex_square=float(np.abs(J @ J + np.eye(4)).max()),
        metric_invariance=float(np.abs(J.T @ g @ J - g).max()),
        form_compatibility=float(np.abs(w - g @ J).max()),
        signature_defect=abs(npos - 2) + abs(nneg - 2),
    )


def exterior_derivative(form, p, step=1e-5, richardson=False):
    """Components (d alpha)(e_a, e_b, e_c) for a < b < c of a 2-form field.

    ``form(p)`` returns the antisymmetric 4x4 matrix of the 2-form at p.
    """
    dw = partials(form, p, step, richardson)  # dw[a] = d_a omega
    out = {}
    for a in range(4):
        for b in range(a + 1, 4):
            for c in range(b + 1, 4):
                out[(a, b, c)] = dw[a][b, c] - dw[b][a, c] + dw[c][a, b]
    return out


def d_omega_residual(p, profile, step=1e-5, richardson=False, form=None):
    """Largest component of d(omega_f) at p by central differences.

    ``form`` overrides the 2-form field (used to show the check is sensitive).
    """
    p = np.asarray(p, dtype=float)
    if not p[1] > step:
        raise DomainError(f"need y > step for finite differences, got y={p[1]!r}")
    if form is None:
        form = lambda q: symplectic(q, profile)
    comps = exterior_derivative(form, p, step, richardson)
    return float(max(abs(c) for c in comps.values()))


def pullback(fmap, p, form, step=None):
    """(phi^* alpha)_p = J^T alpha_{phi(p)} J for a bilinear-form field ``form``."""
    p = np.asarray(p, dtype=float)
    check_point(p)

    def guarded(q):
        image = np.asarray(fmap(q), dtype=float)
        if not image[1] > 0:
            raise DomainError(f"map sends {tuple(q.tolist())} outside y > 0")
        return image

    J = jacobian(guarded, p, step)
    return J.T @ form(guarded(p)) @ J


def random_points(rng, n, x_range=(-2.0, 2.0), y_range=(0.5, 2.0), w_range=(-1.0, 1.0)):
    """``n`` sample points drawn uniformly from a box; returns an (n, 4) array."""
    lo = np.array([x_range[0], y_range[0], w_range[0], w_range[0]])
    hi = np.array([x_range[1], y_range[1], w_range[1], w_range[1]])
    return lo + (hi - lo) * rng.random((n, 4))
