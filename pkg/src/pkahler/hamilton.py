"""Integrals of motion H1, H2, their Hamiltonian vector fields and flows.

Convention: the Hamiltonian field of F satisfies omega(X_F, Y) = dF(Y).
"""

import math
from typing import NamedTuple

import numpy as np

from .exceptions import DomainExitError
from .geometry import check_point, fibre_norm2, pullback, symplectic
from .numerics import gradient


def h1(p, profile):
    """H1 = (2/3) f(y^3 |w|^2), the moment map of the fibre rotation."""
    check_point(p)
    return 2.0 / 3.0 * profile.f(fibre_norm2(p))


def h2(p, profile):
    """H2 = 2 (x/y) (1 - f(y^3 |w|^2)), the moment map of the diagonal R* action."""
    check_point(p)
    x, y = p[0], p[1]
    return 2.0 * x / y * (1.0 - profile.f(fibre_norm2(p)))


HAMILTONIANS = {"h1": h1, "h2": h2}


def _resolve(H, profile):
    if callable(H):
        return lambda q: H(q)
    try:
        fn = HAMILTONIANS[H]
    except KeyError:
        raise ValueError(f"unknown Hamiltonian {H!r}; expected 'h1', 'h2' or a callable") from None
    return lambda q: fn(q, profile)


def field_closed_form(p, which):
    """X_H1 = u dv - v du and X_H2 = 2(x dx + y dy) - 3(u du + v dv)."""
    x, y, u, v = p
    if which == "h1":
        return np.array([0.0, 0.0, -v, u])
    if which == "h2":
        return np.array([2.0 * x, 2.0 * y, -3.0 * u, -3.0 * v])
    raise ValueError(f"no closed-form field for {which!r}")


def field_by_solve(p, H, profile, step=None, richardson=False):
    """Hamiltonian field from a finite-difference gradient and a 4x4 solve.

    Independent of the closed forms: omega^T X = dH is solved directly.
    """
    p = np.asarray(p, dtype=float)
    check_point(p)
    fn = _resolve(H, profile)
    dH = gradient(fn, p, step, richardson)
    W = symplectic(p, profile)
    try:
        X = np.linalg.solve(W.T, dH)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(f"omega_f singular at {tuple(p.tolist())}") from exc
    resid = np.abs(W.T @ X - dH).max()
    scale = max(1.0, np.abs(dH).max())
    if resid > 1e-9 * scale:
        raise ArithmeticError(f"Hamiltonian solve residual {resid:.3e} at {tuple(p.tolist())}")
    return X


def poisson(p, F, G, profile, step=1e-3):
    """{F, G}(p) = omega_p(X_F, X_G), with Richardson-extrapolated gradients.

    The larger default step keeps rounding error small where |H| is large;
    Richardson extrapolation takes care of the truncation error.
    """
    W = symplectic(p, profile)
    XF = field_by_solve(p, F, profile, step, richardson=True)
    XG = field_by_solve(p, G, profile, step, richardson=True)
    return float(XF @ W @ XG)


def flow_h1(p, theta):
    """Time-theta flow of X_H1: rotate w by e^{i theta}."""
    x, y, u, v = p
    c, s = math.cos(theta), math.sin(theta)
    return np.array([x, y, u * c - v * s, u * s + v * c])


def flow_h2(p, s):
    """Time-s flow of X_H2: (z, w) -> (e^{2s} z, e^{-3s} w)."""
    x, y, u, v = p
    a, b = math.exp(2.0 * s), math.exp(-3.0 * s)
    return np.array([a * x, a * y, b * u, b * v])


class FlowResult(NamedTuple):
    endpoint: np.ndarray
    steps: int
    error_estimate: float  # |endpoint(steps) - endpoint(2 steps)|_inf


def _rk4(p, field, T, steps):
    h = T / steps
    q = np.asarray(p, dtype=float).copy()
    for n in range(steps):
        k1 = field(q)
        k2 = field(q + 0.5 * h * k1)
        k3 = field(q + 0.5 * h * k2)
        k4 = field(q + h * k3)
        nxt = q + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not nxt[1] > 0:
            # linear interpolation of y between the last two nodes
            frac = q[1] / (q[1] - nxt[1]) if q[1] != nxt[1] else 0.0
            raise DomainExitError(
                f"trajectory left y > 0 near t = {(n + frac) * h:.6g}", (n + frac) * h
            )
        q = nxt
    return q


def integrate(p, field, T, steps):
    """Classic fixed-step RK4 over [0, T]; error estimated against a run with 2*steps."""
    if steps <= 0:
        raise ValueError("steps must be positive")
    check_point(np.asarray(p, dtype=float))
    end = _rk4(p, field, T, steps)
    fine = _rk4(p, field, T, 2 * steps)
    return FlowResult(end, steps, float(np.abs(end - fine).max()))


def trajectory(p, field, T, steps):
    """All RK4 nodes (steps + 1 rows) of the fixed-step integration."""
    h = T / steps
    rows = [np.asarray(p, dtype=float)]
    check_point(rows[0])
    for _ in range(steps):
        rows.append(_rk4(rows[-1], field, h, 1))
    return np.array(rows)


def symplecto_residual(fmap, samples, profile):
    """max over samples of |phi^* omega_f - omega_f|_inf."""
    form = lambda q: symplectic(q, profile)
    worst = 0.0
    for p in samples:
        p = np.asarray(p, dtype=float)
        worst = max(worst, float(np.abs(pullback(fmap, p, form) - form(p)).max()))
    return worst


def conservation_residual(p, profile, step=1e-3):
    """max_{i,j} |dH_i(X_Hj)| using Richardson finite-difference gradients and closed-form fields."""
    worst = 0.0
    for name_i in ("h1", "h2"):
        dH = gradient(_resolve(name_i, profile), np.asarray(p, dtype=float), step, richardson=True)
        for name_j in ("h1", "h2"):
            worst = max(worst, abs(float(dH @ field_closed_form(p, name_j))))
    return worst

