"""Profile functions f: [0, inf) -> (-inf, 0] parametrising the metric family.

A profile carries f and its first three derivatives. Builtin families are
exact closed forms; tabulated profiles are interpolated column by column.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError
from .numerics import derivative, solve_decreasing


class Profile:
    """Profile function with derivatives up to third order.

    ``evaluator(t)`` must return ``(f, f', f'', f''')`` for ``t >= 0``.
    """

    def __init__(self, evaluator, family="user", k=None, t_max=np.inf):
        self._evaluator = evaluator
        self.family = family
        self.k = k
        self.t_max = t_max

    def __repr__(self):
        if self.k is None:
            return f"Profile({self.family!r})"
        return f"Profile({self.family!r}, k={self.k!r})"

    @classmethod
    def linear(cls, k=1.0):
        """f(t) = -k t."""
        k = _positive_k(k)
        return cls(lambda t: (-k * t, -k, 0.0, 0.0), "linear", k)

    @classmethod
    def quadratic(cls, k=1.0):
        """f(t) = -k t - t^2."""
        k = _positive_k(k)
        return cls(lambda t: (-k * t - t * t, -k - 2.0 * t, -2.0, 0.0), "quadratic", k)

    @classmethod
    def builtin(cls, family, k=1.0):
        if family == "linear":
            return cls.linear(k)
        if family == "quadratic":
            return cls.quadratic(k)
        raise ValueError(f"unknown builtin profile family {family!r}")

    @classmethod
    def from_table(cls, path):
        """Load a whitespace/comma separated table with columns t, f, f', f'', f'''.

        Each column is interpolated with a monotone piecewise cubic (PCHIP),
        so a monotone f stays monotone between samples.
        """
        from scipy.interpolate import PchipInterpolator

        raw = np.loadtxt(path, delimiter=None if _is_whitespace_table(path) else ",", ndmin=2)
        if raw.shape[1] != 5:
            raise ValueError(f"profile table {path} must have 5 columns, found {raw.shape[1]}")
        order = np.argsort(raw[:, 0])
        raw = raw[order]
        interps = [PchipInterpolator(raw[:, 0], raw[:, j]) for j in range(1, 5)]
        t_max = float(raw[-1, 0])

        def evaluator(t):
            if t > t_max:
                raise DomainError(f"t={t!r} beyond tabulated range [0, {t_max!r}]")
            return tuple(float(ip(t)) for ip in interps)

        return cls(evaluator, "table", None, t_max)

    def eval(self, t):
        """Return ``(f, f', f'', f''')`` at ``t >= 0``."""
        if t < 0:
            raise DomainError(f"profile evaluated at negative t={t!r}")
        return self._evaluator(t)

    __call__ = eval

    def f(self, t):
        return self.eval(t)[0]

    def df(self, t):
        return self.eval(t)[1]

    def inverse(self, s):
        """The unique t >= 0 with f(t) = s, for s <= 0."""
        if s > 0:
            raise DomainError(f"profile inverse needs s <= 0, got {s!r}")
        return solve_decreasing(self.f, self.df, s, tol=1e-12)

    def g_factor(self, t):
        """G_f(t) = [f''(1-f) + f'^2]/(1-f)^2 - [f''' f - f''^2]/f'^2."""
        f, f1, f2, f3 = self.eval(t)
        one_f = 1.0 - f
        return (f2 * one_f + f1 * f1) / (one_f * one_f) - (f3 * f - f2 * f2) / (f1 * f1)

    def validate(self, grid, rtol=1e-6):
        return validate(self, grid, rtol)


def _positive_k(k):
    k = float(k)
    if not k > 0:
        raise ValueError(f"builtin profiles need k > 0, got {k!r}")
    return k


def _is_whitespace_table(path):
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                return "," not in line
    return True


@dataclass
class ValidationReport:
    f_at_zero: float
    max_positive_slope: float  # max of f' over the grid; must be < 0
    unbounded: bool
    derivative_mismatch: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def validate(profile, grid, rtol=1e-6):
    """Check f(0) = 0, f' < 0, divergence to -inf, and derivative consistency.

    Divergence is judged on a geometric grid up to 1e6 (or the table range):
    |f| must grow by more than a factor 10 between t = 1 and the far end.
    Derivatives are compared with central differences of the next lower order
    using ``|fd - d| <= rtol * max(1, |d|)``.
    """
    grid = [float(t) for t in grid]
    if not grid:
        raise ValueError("validation grid must be nonempty")
    failures = []

    f0 = profile.eval(0.0)[0]
    if abs(f0) > 1e-12:
        failures.append(f"f(0) = {f0!r} != 0")

    slopes = [profile.eval(t)[1] for t in grid]
    max_slope = max(slopes)
    if max_slope >= 0:
        bad = grid[int(np.argmax(slopes))]
        failures.append(f"f' >= 0 at t = {bad!r} (f' = {max_slope!r})")

    t_far = min(1e6, profile.t_max)
    geo = np.geomspace(1e-3, t_far, 40)
    fvals = [profile.eval(t)[0] for t in geo]
    t_ref = min(1.0, t_far / 10)
    unbounded = bool(np.all(np.diff(fvals) < 0) and abs(fvals[-1]) > 10 * abs(profile.eval(t_ref)[0]))
    if not unbounded:
        failures.append("f does not appear to diverge to -inf on the geometric sample grid")

    mismatch = {"df": 0.0, "d2f": 0.0, "d3f": 0.0}
    for t in grid:
        h = 1e-4 * max(1.0, t)
        # one-sided near t = 0 would lose an order; shift the stencil instead
        c = max(t, h)
        if np.isfinite(profile.t_max):
            c = min(c, profile.t_max - 2 * h)
        vals = profile.eval(c)
        for order, name in ((1, "df"), (2, "d2f"), (3, "d3f")):
            fd = derivative(lambda s, j=order - 1: profile.eval(s)[j], c, h, richardson=True)
            err = abs(float(fd) - vals[order]) / max(1.0, abs(vals[order]))
            mismatch[name] = max(mismatch[name], err)
    for name, err in mismatch.items():
        if err > rtol:
            failures.append(f"derivative mismatch in {name}: relative error {err:.3e} > {rtol:g}")

    return ValidationReport(f0, float(max_slope), unbounded, mismatch, failures)
