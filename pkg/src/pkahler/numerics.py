"""Small numerical kernels: finite differences, adaptive Simpson, monotone root finding.

Everything here works on plain floats or 1-d numpy arrays and keeps no state,
so the functions can be called concurrently.
"""

import math

import numpy as np

from .exceptions import DivergenceError, QuadratureError

FIRST_STEP = 1e-5
SECOND_STEP = 1e-4


def step_for(coord, base=FIRST_STEP):
    """Central-difference step scaled to the magnitude of ``coord``.

    The step is rounded to a power of two so that ``coord +- h`` is exact in
    floating point; this makes differences of affine maps exact.
    """
    return 2.0 ** round(math.log2(base * max(1.0, abs(coord))))


def derivative(fn, x, h=None, richardson=False):
    """Central difference of a scalar- or array-valued function of one real variable.

    With ``richardson`` the h and h/2 estimates are combined to cancel the
    O(h^2) term.
    """
    if h is None:
        h = step_for(x)
    d1 = (np.asarray(fn(x + h)) - np.asarray(fn(x - h))) / (2 * h)
    if not richardson:
        return d1
    h2 = h / 2
    d2 = (np.asarray(fn(x + h2)) - np.asarray(fn(x - h2))) / (2 * h2)
    return (4 * d2 - d1) / 3


def partials(fn, p, h=None, richardson=False):
    """Stack of partial derivatives ``[d fn / d p_a for a in range(len(p))]``.

    ``fn`` may return a scalar, a vector or a matrix; the leading axis of the
    result indexes the differentiation direction.
    """
    p = np.asarray(p, dtype=float)
    out = []
    for a in range(p.size):
        ha = step_for(p[a]) if h is None else h

        def along(s, a=a):
            q = p.copy()
            q[a] = s
            return fn(q)

        out.append(derivative(along, p[a], ha, richardson))
    return np.array(out)


def gradient(fn, p, h=None, richardson=False):
    """Gradient of a scalar function on R^n by central differences."""
    return partials(fn, p, h, richardson)


def jacobian(fmap, p, h=None, richardson=False):
    """Jacobian ``J[i, a] = d fmap_i / d p_a`` by central differences."""
    return partials(fmap, p, h, richardson).T


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(fn, a, b, tol=1e-9, max_depth=50):
    """Integrate ``fn`` over [a, b] by recursive adaptive Simpson with Richardson correction.

    Reversed limits give the negated integral. Raises QuadratureError when a
    subinterval still fails the error test at ``max_depth``.
    """
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(fn, b, a, tol, max_depth)
    fa, fb = fn(a), fn(b)
    m = 0.5 * (a + b)
    fm = fn(m)
    whole = _simpson(fa, fm, fb, a, b)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = fn(lm), fn(rm)
        left = _simpson(fa, flm, fm, a, m)
        right = _simpson(fm, frm, fb, m, b)
        err = left + right - whole
        if abs(err) <= 15.0 * tol:
            return left + right + err / 15.0
        if depth >= max_depth:
            raise QuadratureError(
                f"adaptive Simpson did not converge on [{a!r}, {b!r}] (error {err:.3e})"
            )
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2, depth + 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def solve_decreasing(fn, dfn, target, tol=1e-12, max_doublings=200):
    """Solve ``fn(t) = target`` for t >= 0 with ``fn`` strictly decreasing and ``fn(0) >= target``.

    The root is bracketed by doubling an upper end point, narrowed by
    bisection and polished with safeguarded Newton steps. The returned t
    satisfies ``|fn(t) - target| <= tol * (1 + |target|)``.
    """
    thresh = tol * (1.0 + abs(target))
    lo, hi = 0.0, 1.0
    if abs(fn(lo) - target) <= thresh:
        return lo
    doublings = 0
    while fn(hi) > target:
        lo = hi
        hi *= 2.0
        doublings += 1
        if doublings > max_doublings:
            raise DivergenceError(f"no bracket for target {target!r} after {max_doublings} doublings")

    # coarse bisection gives Newton a start inside the basin
    for _ in range(60):
        if hi - lo <= 1e-6 * (1.0 + hi):
            break
        mid = 0.5 * (lo + hi)
        if fn(mid) > target:
            lo = mid
        else:
            hi = mid

    t = 0.5 * (lo + hi)
    for _ in range(100):
        r = fn(t) - target
        if abs(r) <= thresh:
            # one extra Newton step usually lands on the correctly rounded root
            d = dfn(t)
            if d != 0:
                t_new = t - r / d
                if lo <= t_new <= hi and abs(fn(t_new) - target) <= abs(r):
                    return t_new
            return t
        if r > 0:
            lo = t
        else:
            hi = t
        d = dfn(t)
        t_new = t - r / d if d != 0 else 0.5 * (lo + hi)
        if not (lo < t_new < hi) or not math.isfinite(t_new):
            t_new = 0.5 * (lo + hi)
        if t_new == t:
            break
        t = t_new
    if abs(fn(t) - target) <= thresh:
        return t
    raise DivergenceError(f"Newton polish stalled at t={t!r} (residual {fn(t) - target:.3e})")
