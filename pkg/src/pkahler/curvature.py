"""Curvature of g_f: closed forms at normal-form points (i, u) and two numerical routes.

Normalisation. The closed forms (Ricci components and ``scal``) follow the
convention in which scal = 1 on H^2 x {0} for f(t) = -kt. Ricci components are
-d^2 log det(g) / dz_i d conj(z_j) with det the determinant of the real 4x4
matrix; inverse components are the entries of inv(4 H) with
H[j, k] = g(d/dz_j, d/dzbar_k). In this normalisation the Riemannian scalar
curvature is exactly 4 times the complex trace.

Two independent numerical routes are provided:

* ``ricci_numeric_logdet``: finite-difference complex Hessian of log det g
  (and ``scalar_numeric_logdet``, its trace against the inverted real metric).
* ``scalar_numeric_full``: Christoffel symbols, Riemann and Ricci tensors of
  the real metric by nested central differences, with no use of the Kaehler
  structure. Its sign convention is fixed by ``levi_civita_scalar`` returning
  +2 on the unit round sphere.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .actions import normal_form
from .geometry import check_point, fibre_norm2, metric

# Riemannian scalar curvature / complex-trace scalar, for every metric in the family
RIEMANNIAN_PER_TRACE = 4.0


class InverseMetric(NamedTuple):
    zz: float  # g^{z zbar}
    ww: float  # g^{w wbar}
    zw: complex  # g^{z wbar}


class Ricci(NamedTuple):
    zz: float  # R_{z zbar}
    ww: float  # R_{w wbar}
    zw: complex  # R_{z wbar}


def det_metric(p, profile):
    """det g_f = (16/9) y^2 f'^2 (1 - f)^2."""
    check_point(p)
    f, f1, _, _ = profile.eval(fibre_norm2(p))
    return 16.0 / 9.0 * p[1] ** 2 * f1 * f1 * (1.0 - f) ** 2


def inverse_metric_at_iu(u, profile):
    """Closed-form inverse components at (i, u)."""
    f, f1, _, _ = profile.eval(u * u)
    one_f = 1.0 - f
    return InverseMetric(
        zz=1.0 / (2.0 * one_f),
        ww=3.0 * (one_f + 3.0 * f1 * u * u) / (8.0 * f1 * one_f),
        zw=1j * 3.0 * u / (4.0 * one_f),
    )


_DZ = np.array([[1.0, -1.0j, 0.0, 0.0], [0.0, 0.0, 1.0, -1.0j]]) / 2.0


def hermitian_matrix(G):
    """H[j, k] = g(d/dz_j, d/dzbar_k) for a real 4x4 metric in (x, y, u, v)."""
    return _DZ @ G @ _DZ.conj().T


def complex_inverse_from_real(G):
    """Inverse components read off inv(4 H) from the real metric matrix."""
    inv = np.linalg.inv(4.0 * hermitian_matrix(G))
    return InverseMetric(float(inv[0, 0].real), float(inv[1, 1].real), complex(inv[0, 1]))


def ricci_closed(u, profile):
    """Closed-form Ricci components at (i, u)."""
    t = u * u
    f, f1, f2, _ = profile.eval(t)
    G = profile.g_factor(t)
    one_f = 1.0 - f
    ratio = f2 / f1 - f1 / one_f
    return Ricci(
        zz=0.5 - 3.0 * t * ratio + 4.5 * t * t * G,
        ww=-2.0 * ratio + 2.0 * t * G,
        zw=1j * (3.0 * u * ratio - 3.0 * u**3 * G),
    )


def scalar_closed(u, profile):
    """Closed-form scalar curvature at (i, u) as usually quoted for this family.

    Equals g^{zz}R_zz + g^{ww}R_ww + 2 Re(g^{zw} R_zw) in terms of the
    closed-form components. This pairs g^{z wbar} with R_{z wbar}; see
    ``scalar_traced`` for the contraction that matches the numerical routes.
    """
    t = u * u
    f, f1, f2, _ = profile.eval(t)
    G = profile.g_factor(t)
    one_f = 1.0 - f
    inner = 6.0 * t * G + 5.5 * (f1 / one_f - f2 / f1) + G * one_f / (2.0 * f1)
    return 1.0 / one_f - 0.75 * f2 / (f1 * f1) + 1.5 * t / one_f * inner


def scalar_traced(u, profile):
    """tr(g^{-1} Ric) at (i, u): g^{zz}R_zz + g^{ww}R_ww + 2 Re(conj(g^{zw}) R_zw).

    For f(t) = -kt this reduces to 1 / (1 + k u^2).
    """
    g = inverse_metric_at_iu(u, profile)
    R = ricci_closed(u, profile)
    return g.zz * R.zz + g.ww * R.ww + 2.0 * (g.zw.conjugate() * R.zw).real


def _hessian(fn, p, h):
    """Second partials of a scalar function on R^4 with step h."""
    p = np.asarray(p, dtype=float)
    f0 = fn(p)
    H = np.zeros((4, 4))
    E = np.eye(4) * h
    for a in range(4):
        H[a, a] = (fn(p + E[a]) - 2.0 * f0 + fn(p - E[a])) / (h * h)
        for b in range(a + 1, 4):
            H[a, b] = H[b, a] = (
                fn(p + E[a] + E[b]) - fn(p + E[a] - E[b]) - fn(p - E[a] + E[b]) + fn(p - E[a] - E[b])
            ) / (4.0 * h * h)
    return H


def ricci_numeric_logdet(u, profile, step=1e-3, det=None):
    """Ricci components at (i, u) from a Richardson-extrapolated Hessian of log det g.

    ``det`` selects the determinant: the closed form (default) or, with
    ``det="matrix"``, numpy's determinant of the 4x4 metric.
    """
    if det == "matrix":
        logdet = lambda q: math.log(np.linalg.det(metric(q, profile)))
    else:
        logdet = lambda q: math.log(det_metric(q, profile))
    p = np.array([0.0, 1.0, u, 0.0])
    L = (4.0 * _hessian(logdet, p, step / 2) - _hessian(logdet, p, step)) / 3.0
    # d_z d_zbar = (d_xx + d_yy)/4 ; d_z d_wbar = (d_x - i d_y)(d_u + i d_v)/4
    zz = -0.25 * (L[0, 0] + L[1, 1])
    ww = -0.25 * (L[2, 2] + L[3, 3])
    zw = -0.25 * complex(L[0, 2] + L[1, 3], L[0, 3] - L[1, 2])
    return Ricci(float(zz), float(ww), zw)


def scalar_numeric_logdet(u, profile, step=1e-3):
    """Trace of the log-det Ricci against the numerically inverted real metric at (i, u).

    Uses no closed form: inverse components come from ``complex_inverse_from_real``
    and Ricci components from ``ricci_numeric_logdet``.
    """
    g = complex_inverse_from_real(metric([0.0, 1.0, u, 0.0], profile))
    R = ricci_numeric_logdet(u, profile, step, det="matrix")
    return g.zz * R.zz + g.ww * R.ww + 2.0 * (g.zw.conjugate() * R.zw).real


def christoffel(metric_fn, p, h=1e-4):
    """Gamma[a, b, c] = Gamma^a_{bc} of the Levi-Civita connection."""
    p = np.asarray(p, dtype=float)
    n = p.size
    gi = np.linalg.inv(metric_fn(p))
    dg = np.empty((n, n, n))  # dg[c, a, b] = d_c g_ab
    for c in range(n):
        e = np.zeros(n)
        e[c] = h
        dg[c] = (metric_fn(p + e) - metric_fn(p - e)) / (2.0 * h)
    # lowered[d, b, c] = (d_b g_dc + d_c g_db - d_d g_bc) / 2
    lowered = 0.5 * (dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg)
    return np.einsum("ad,dbc->abc", gi, lowered)


def riemann(metric_fn, p, h=1e-4, h_outer=1e-3):
    """R[a, b, c, d] = R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}."""
    p = np.asarray(p, dtype=float)
    n = p.size
    Gam = christoffel(metric_fn, p, h)
    dGam = np.empty((n, n, n, n))  # dGam[c] = d_c Gamma
    for c in range(n):
        e = np.zeros(n)
        e[c] = h_outer
        dGam[c] = (christoffel(metric_fn, p + e, h) - christoffel(metric_fn, p - e, h)) / (2.0 * h_outer)
    return (
        np.einsum("cadb->abcd", dGam)
        - np.einsum("dacb->abcd", dGam)
        + np.einsum("ace,edb->abcd", Gam, Gam)
        - np.einsum("ade,ecb->abcd", Gam, Gam)
    )


def ricci_tensor(metric_fn, p, h=1e-4, h_outer=1e-3):
    """Ric_{bd} = R^a_{bad}."""
    return np.einsum("abad->bd", riemann(metric_fn, p, h, h_outer))


def levi_civita_scalar(metric_fn, p, h=1e-4, h_outer=1e-3):
    """Riemannian scalar curvature g^{bd} Ric_{bd}; +2 on the unit round sphere."""
    p = np.asarray(p, dtype=float)
    return float(np.einsum("bd,bd", np.linalg.inv(metric_fn(p)), ricci_tensor(metric_fn, p, h, h_outer)))


def scalar_numeric_full(p, profile, step=1e-3):
    """Levi-Civita scalar of g_f at p, divided by RIEMANNIAN_PER_TRACE."""
    p = np.asarray(p, dtype=float)
    check_point(p)
    if not p[1] > 2 * step:
        raise ValueError(f"need y > 2*step, got y={p[1]!r}")
    fn = lambda q: metric(q, profile)
    return levi_civita_scalar(fn, p, h=step / 10, h_outer=step) / RIEMANNIAN_PER_TRACE


@dataclass
class BoundScan:
    k: float
    max_scal: float
    argmax: tuple  # (x, y, u) grid point attaining max_scal
    passed: bool  # max_scal < 1
    zero_slice_max_deviation: float  # max |scal - 1| on w = 0
    max_scal_traced: float


def bound_scan(k, u_grid, y_grid=(1.0,), x_grid=(0.0,)):
    """Scan scal over grid points (x, y, u, 0) with u != 0 for f(t) = -kt."""
    from .profile import Profile

    prof = Profile.linear(k)
    best, arg, best_traced = -math.inf, None, -math.inf
    dev = 0.0
    for x in x_grid:
        for y in y_grid:
            dev = max(dev, abs(scalar_closed(normal_form((x, y, 0.0, 0.0))[0], prof) - 1.0))
            for u in u_grid:
                if u == 0:
                    continue
                un = normal_form((x, y, u, 0.0))[0]
                s = scalar_closed(un, prof)
                if s > best:
                    best, arg = s, (float(x), float(y), float(u))
                best_traced = max(best_traced, scalar_traced(un, prof))
    return BoundScan(float(k), float(best), arg, bool(best < 1.0), float(dev), float(best_traced))
