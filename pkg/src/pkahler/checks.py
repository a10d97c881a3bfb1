"""The invariant suite behind ``pkahler check``.

Every entry is a flat record
``{"invariant", "max_residual", "tolerance", "pass", "worst_point"}`` where
``worst_point`` is an ambient point (x, y, u, v). Base-space and profile
invariants report a representative ambient point: the naive section point
for a base point b, and (i, sqrt(t)) for a profile parameter t.
"""

import math

import numpy as np

from . import actions, curvature, fibration, geometry, hamilton
from .profile import validate


def _rec(name, residual, tol, worst, passed=None):
    residual = float(residual)
    if passed is None:
        passed = residual <= tol
    return {
        "invariant": name,
        "max_residual": residual,
        "tolerance": float(tol),
        "pass": bool(passed),
        "worst_point": [float(c) for c in worst] if worst is not None else None,
    }


def _worst(pairs):
    """(max residual, argmax point) of an iterable of (residual, point)."""
    best, arg = -math.inf, None
    for r, p in pairs:
        if r > best:
            best, arg = r, p
    return best, arg


def _t_point(t):
    return [0.0, 1.0, math.sqrt(t), 0.0]


def profile_checks(profile):
    grid = np.linspace(0.0, min(10.0, profile.t_max), 41)
    rep = validate(profile, grid)
    slopes = [profile.df(t) for t in grid]
    i = int(np.argmax(slopes))
    return [
        _rec("profile.f_at_zero", abs(rep.f_at_zero), 1e-12, _t_point(0.0)),
        _rec("profile.slope_negative", rep.max_positive_slope, 0.0, _t_point(grid[i]),
             passed=rep.max_positive_slope < 0),
        _rec("profile.unbounded_below", 0.0 if rep.unbounded else 1.0, 0.0, _t_point(grid[-1])),
        _rec("profile.derivatives", max(rep.derivative_mismatch.values()), 1e-6, _t_point(grid[-1])),
    ]


def geometry_checks(profile, pts):
    comp = _worst((geometry.compatibility_residuals(p, profile).max_continuous(), p) for p in pts)
    sig = _worst((geometry.compatibility_residuals(p, profile).signature_defect, p) for p in pts)
    dw = _worst((geometry.d_omega_residual(p, profile), p) for p in pts)
    return [
        _rec("geometry.compatibility", comp[0], 1e-9, comp[1]),
        _rec("geometry.signature_2_2", sig[0], 0.0, sig[1]),
        _rec("geometry.d_omega", dw[0], 1e-6, dw[1]),
    ]


def hamilton_checks(profile, pts, rng):
    out = []
    for name in ("h1", "h2"):
        r = _worst(
            (float(np.abs(hamilton.field_by_solve(p, name, profile) - hamilton.field_closed_form(p, name)).max()), p)
            for p in pts
        )
        out.append(_rec(f"hamilton.field_{name}", r[0], 1e-6, r[1]))
    r = _worst((abs(hamilton.poisson(p, "h1", "h2", profile)), p) for p in pts)
    out.append(_rec("hamilton.poisson_h1_h2", r[0], 1e-8, r[1]))

    flows = {"h1": hamilton.flow_h1, "h2": hamilton.flow_h2}
    rk, cons = [], []
    for p in pts:
        for name, exact in flows.items():
            field = lambda q, name=name: hamilton.field_closed_form(q, name)
            end = hamilton.integrate(p, field, 1.0, 200).endpoint
            rk.append((float(np.abs(end - exact(p, 1.0)).max()), p))
            q = exact(p, 1.0)
            cons.append((max(abs(hamilton.h1(q, profile) - hamilton.h1(p, profile)),
                             abs(hamilton.h2(q, profile) - hamilton.h2(p, profile))), p))
    r = _worst(rk)
    out.append(_rec("hamilton.rk4_vs_exact", r[0], 1e-8, r[1]))
    r = _worst(cons)
    out.append(_rec("hamilton.flow_conservation", r[0], 1e-10, r[1]))

    sub = pts[:10]
    r = max(
        hamilton.symplecto_residual(lambda q: hamilton.flow_h1(q, 0.7), sub, profile),
        hamilton.symplecto_residual(lambda q: hamilton.flow_h2(q, 0.3), sub, profile),
    )
    out.append(_rec("hamilton.flow_symplectic", r, 1e-7, sub[0]))
    return out


def _random_sl2(rng):
    a, b, c = rng.uniform(-1.5, 1.5, 3)
    a = a if abs(a) > 0.3 else 0.3 + abs(a)
    return np.array([[a, b], [c, (1.0 + b * c) / a]])


def actions_checks(profile, pts, rng):
    out = []
    norm, comm = [], []
    for p in pts:
        A = _random_sl2(rng)
        th = rng.uniform(0, 2 * math.pi)
        q = actions.sl2_apply(A, p)
        norm.append((abs(geometry.fibre_norm2(q) - geometry.fibre_norm2(p)), p))
        comm.append((float(np.abs(actions.sl2_apply(A, actions.circle_apply(th, p))
                                  - actions.circle_apply(th, q)).max()), p))
    r = _worst(norm)
    out.append(_rec("actions.norm_invariance", r[0], 1e-10, r[1]))
    r = _worst(comm)
    out.append(_rec("actions.sl2_circle_commute", r[0], 1e-10, r[1]))

    sub = pts[:10]
    iso = 0.0
    for _ in range(5):
        e = actions.IsometryElement(_random_sl2(rng), rng.uniform(0, 2 * math.pi))
        iso = max(iso, actions.isometry_residual(e, sub, profile))
        form = lambda q: geometry.symplectic(q, profile)
        for p in sub:
            pulled = geometry.pullback(lambda q: actions.isometry_apply(e, q), p, form)
            iso = max(iso, float(np.abs(pulled - form(p)).max()))
    out.append(_rec("actions.sl2_circle_isometry", iso, 1e-7, sub[0]))

    basis = [np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 0.0]])]
    r = _worst((actions.moment_residual(p, X, profile), p) for p in sub for X in basis)
    out.append(_rec("actions.moment_map", r[0], 1e-6, r[1]))
    r = _worst((abs(actions.moment_map(p, basis[0], profile) - hamilton.h2(p, profile)), p) for p in pts)
    out.append(_rec("actions.moment_equals_h2", r[0], 1e-12, r[1]))

    errs = []
    for i in range(8):
        e = actions.IsometryElement(
            actions.canonical_sign(_random_sl2(rng)), rng.uniform(0, 2 * math.pi), bool(i & 1), bool(i & 2)
        )
        got = actions.recover_parameters(lambda q, e=e: actions.isometry_apply(e, q), rng=rng)
        errs.append((actions.parameter_error(e, got), [0.0, 1.0, 0.0, 0.0]))
    r = _worst(errs)
    out.append(_rec("actions.recover_roundtrip", r[0], 1e-6, r[1]))
    return out


def curvature_checks(profile, pts):
    out = []
    r = _worst(
        (abs(curvature.det_metric(p, profile) / np.linalg.det(geometry.metric(p, profile)) - 1.0), p) for p in pts
    )
    out.append(_rec("curvature.det_closed_form", r[0], 1e-8, r[1]))

    us = np.linspace(0.0, 3.0, 13)
    inv, ric, scal = [], [], []
    for u in us:
        p = [0.0, 1.0, float(u), 0.0]
        a = curvature.inverse_metric_at_iu(u, profile)
        b = curvature.complex_inverse_from_real(geometry.metric(p, profile))
        inv.append((max(abs(a.zz - b.zz), abs(a.ww - b.ww), abs(a.zw - b.zw)), p))
        c = curvature.ricci_closed(u, profile)
        n = curvature.ricci_numeric_logdet(u, profile)
        ric.append((max(abs(c.zz - n.zz), abs(c.ww - n.ww), abs(c.zw - n.zw)), p))
        scal.append((abs(curvature.scalar_closed(u, profile) - curvature.scalar_numeric_full(p, profile)), p))
    for name, rows, tol in (
        ("curvature.inverse_closed_form", inv, 1e-9),
        ("curvature.ricci_closed_vs_logdet", ric, 1e-4),
        ("curvature.scalar_closed_vs_full", scal, 5e-3),
    ):
        r = _worst(rows)
        out.append(_rec(name, r[0], tol, r[1]))

    inv_rows = []
    for p in pts[:10]:
        un = actions.normal_form(p)[0]
        inv_rows.append((abs(curvature.scalar_numeric_full(p, profile)
                             - curvature.scalar_numeric_full([0.0, 1.0, un, 0.0], profile)), p))
    r = _worst(inv_rows)
    out.append(_rec("curvature.scalar_isometry_invariance", r[0], 5e-3, r[1]))

    f0, f1, f2, _ = profile.eval(0.0)
    expect = 1.0 - 0.75 * f2 / (f1 * f1)
    out.append(_rec("curvature.scalar_zero_slice", abs(curvature.scalar_closed(0.0, profile) - expect),
                    1e-12, [0.0, 1.0, 0.0, 0.0]))
    return out


def fibration_checks(profile, rng, n_grid=10, n_darboux=20):
    out = []
    b1s = np.linspace(-3.0, -0.3, n_grid)
    b2s = np.linspace(-4.0, 4.0, n_grid)
    grid = [(float(b1), float(b2)) for b1 in b1s for b2 in b2s]

    def rep(b):
        return fibration.naive_section(b, profile)

    r = _worst(
        (float(np.abs(np.subtract(fibration.project(rep(b), profile), b)).max()), rep(b)) for b in grid
    )
    out.append(_rec("fibration.section_right_inverse", r[0], 1e-10, r[1]))

    if profile.family == "linear" and profile.k == 1.0:
        r = _worst((abs(fibration.naive_defect((b1, 0.0), profile) - 0.75 / (1.0 - 1.5 * b1)), rep((b1, 0.0)))
                   for b1 in b1s)
        out.append(_rec("fibration.naive_defect_closed_form", r[0], 1e-5, r[1]))

    sec = fibration.SectionHandle()
    r = _worst((abs(fibration.section_defect(sec, b, profile)), rep(b)) for b in grid)
    out.append(_rec("fibration.lagrangian_defect", r[0], 1e-5, r[1]))

    dar, rt = [], []
    for _ in range(n_darboux):
        c = (rng.uniform(0, 2 * math.pi), rng.uniform(-3.0, -0.3), rng.uniform(-1, 1), rng.uniform(-4, 4))
        p = fibration.chart_inverse(c, sec, profile)
        dar.append((fibration.darboux_residual(fibration.darboux_matrix(p, sec, profile)), p))
        back = fibration.chart(p, sec, profile)
        d = abs(back.theta - c[0]) % (2 * math.pi)
        rt.append((max(min(d, 2 * math.pi - d), *(abs(x - y) for x, y in zip(back[1:], c[1:]))), p))
    r = _worst(dar)
    out.append(_rec("fibration.darboux_canonical", r[0], 1e-4, r[1]))
    r = _worst(rt)
    out.append(_rec("fibration.chart_roundtrip", r[0], 1e-8, r[1]))

    per = [(fibration.period_generator(b, profile), rep(b)) for b in grid[:: max(1, len(grid) // 10)]]
    ret = _worst((pl.return_distance, p) for pl, p in per)
    out.append(_rec("fibration.h1_period_return", ret[0], 1e-12, ret[1]))
    near = min(((pl.min_h2_distance, p) for pl, p in per), key=lambda x: x[0])
    # here the check is a lower bound: the closest near-return must stay above 1e-3
    out.append(_rec("fibration.h2_min_return_distance", near[0], 1e-3, near[1], passed=near[0] > 1e-3))
    return out


def run_suite(profile, seed=42, n_points=50):
    """All invariants for ``profile`` at ``n_points`` seeded sample points.

    If the profile itself fails its axioms, only the profile records are
    returned: the remaining invariants presuppose a valid profile.
    """
    rng = np.random.default_rng(seed)
    records = profile_checks(profile)
    if not all(r["pass"] for r in records):
        return records
    pts = geometry.random_points(rng, n_points)
    records += geometry_checks(profile, pts)
    records += hamilton_checks(profile, pts, rng)
    records += actions_checks(profile, pts, rng)
    records += curvature_checks(profile, pts)
    records += fibration_checks(profile, rng)
    return records
