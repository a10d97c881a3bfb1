"""Acceptance criteria, each checked at its stated tolerance and runtime budget.

Every criterion produces one line ``[PASS]`` or ``[FAIL]`` with the measured
quantities. Under pytest the lines are printed in the terminal summary; the
file can also be run directly with ``python tests/test_acceptance.py``.
"""

import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from pkahler import Profile, actions, curvature, fibration, geometry, hamilton
from pkahler.actions import IsometryElement
from pkahler.cli import main

SEED = 42
BUILTINS = (Profile.linear(1.0), Profile.quadratic(1.0))


def _random_sl2(rng):
    a, b, c = rng.uniform(-1.5, 1.5, 3)
    a = a if abs(a) > 0.3 else 0.3 + abs(a)
    return np.array([[a, b], [c, (1.0 + b * c) / a]])


def criterion_1():
    rng = np.random.default_rng(SEED)
    comp = dw = 0.0
    sig_ok = True
    for prof in BUILTINS:
        for p in geometry.random_points(rng, 200):
            r = geometry.compatibility_residuals(p, prof)
            comp = max(comp, r.max_continuous())
            sig_ok &= r.signature_defect == 0
            dw = max(dw, geometry.d_omega_residual(p, prof))
    ok = comp <= 1e-9 and dw <= 1e-6 and sig_ok
    return ok, 5.0, f"compatibility {comp:.2e} <= 1e-9, d omega {dw:.2e} <= 1e-6, signature (2,2): {sig_ok}"


def criterion_2():
    rng = np.random.default_rng(SEED)
    field = pb = 0.0
    for prof in BUILTINS:
        for p in geometry.random_points(rng, 200):
            for name in ("h1", "h2"):
                d = hamilton.field_by_solve(p, name, prof) - hamilton.field_closed_form(p, name)
                field = max(field, float(np.abs(d).max()))
            pb = max(pb, abs(hamilton.poisson(p, "h1", "h2", prof)))
    ok = field <= 1e-6 and pb <= 1e-8
    return ok, 5.0, f"field mismatch {field:.2e} <= 1e-6, {{H1,H2}} {pb:.2e} <= 1e-8"


def criterion_3():
    rng = np.random.default_rng(SEED)
    rk = sym = cons = 0.0
    exact = {"h1": hamilton.flow_h1, "h2": hamilton.flow_h2}
    for prof in BUILTINS:
        pts = geometry.random_points(rng, 50)
        for p in pts:
            for name, flow in exact.items():
                res = hamilton.integrate(p, lambda q, n=name: hamilton.field_closed_form(q, n), 1.0, 200)
                q = flow(p, 1.0)
                rk = max(rk, float(np.abs(res.endpoint - q).max()))
                cons = max(cons, abs(hamilton.h1(q, prof) - hamilton.h1(p, prof)),
                           abs(hamilton.h2(q, prof) - hamilton.h2(p, prof)))
        for name, flow in exact.items():
            sym = max(sym, hamilton.symplecto_residual(lambda q, f=flow: f(q, 1.0), pts, prof))
    ok = rk <= 1e-8 and sym <= 1e-7 and cons <= 1e-10
    return ok, 10.0, f"RK4 vs exact {rk:.2e} <= 1e-8, pullback {sym:.2e} <= 1e-7, conservation {cons:.2e} <= 1e-10"


def criterion_4():
    rng = np.random.default_rng(SEED)
    lie = [np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0, 0.0], [1.0, 0.0]]),
           np.array([[0.5, 2.0], [-1.0, -0.5]]), np.array([[-1.0, 0.3], [0.7, 1.0]])]
    pts = geometry.random_points(rng, 5)
    res = max(actions.moment_residual(p, X, prof) for prof in BUILTINS for p, X in zip(pts, lie))
    mu = max(abs(actions.moment_map(p, lie[0], prof) - hamilton.h2(p, prof))
             for prof in BUILTINS for p in geometry.random_points(rng, 100))
    ok = res <= 1e-6 and mu <= 1e-12
    return ok, 5.0, f"d mu - i_V omega {res:.2e} <= 1e-6, mu_diag - H2 {mu:.2e} <= 1e-12"


def criterion_5():
    ric = scal_logdet = scal_full = 0.0
    worst = None
    for prof in BUILTINS:
        for u in np.arange(0.0, 3.0 + 1e-9, 0.25):
            c = curvature.ricci_closed(u, prof)
            n = curvature.ricci_numeric_logdet(u, prof)
            ric = max(ric, abs(c.zz - n.zz), abs(c.ww - n.ww), abs(c.zw - n.zw))
            s = curvature.scalar_closed(u, prof)
            scal_logdet = max(scal_logdet, abs(s - curvature.scalar_numeric_logdet(u, prof)))
            d = abs(s - curvature.scalar_numeric_full([0.0, 1.0, u, 0.0], prof))
            if d > scal_full:
                scal_full, worst = d, (prof.family, float(u))
    lin0 = curvature.scalar_closed(0.0, BUILTINS[0])
    quad0 = curvature.scalar_numeric_full([0.0, 1.0, 0.0, 0.0], BUILTINS[1])
    ok = ric <= 1e-4 and scal_logdet <= 1e-4 and scal_full <= 5e-3 and lin0 == 1.0 and abs(quad0 - 2.5) <= 5e-3
    return ok, 30.0, (f"Ricci vs logdet {ric:.2e} <= 1e-4, scal vs logdet {scal_logdet:.2e} <= 1e-4, "
                      f"scal vs full {scal_full:.2e} <= 5e-3 (worst {worst}), scal(i,0) linear {lin0!r}, "
                      f"quadratic {quad0:.5f}")


def criterion_6():
    grid = np.linspace(0.1, 5.0, 50)
    scans = [curvature.bound_scan(k, grid, y_grid=(0.5, 1.0, 2.0), x_grid=(-1.0, 0.0, 1.0))
             for k in (0.01, 1.0, 100.0)]
    bound = all(s.passed for s in scans)
    slice_dev = max(s.zero_slice_max_deviation for s in scans)
    numeric = curvature.scalar_numeric_full([0.0, 1.0, 1.0, 0.0], Profile.linear(1.0))
    ok = bound and slice_dev <= 1e-12 and abs(numeric - (-0.625)) <= 5e-3
    maxes = ", ".join(f"{s.max_scal:.4f}" for s in scans)
    return ok, 10.0, (f"max scal < 1 for k in (0.01, 1, 100): {bound} ({maxes}), w=0 slice dev {slice_dev:.1e}, "
                      f"numeric scal(i,1;k=1) {numeric:.5f} vs -0.625 (tol 5e-3)")


def criterion_7():
    prof = Profile.linear(1.0)
    naive, lagr = fibration.SectionHandle("naive"), fibration.SectionHandle()
    d0 = fibration.section_defect(naive, (-2 / 3, 0.0), prof)
    dl = max(abs(fibration.section_defect(lagr, (b1, b2), prof))
             for b1 in np.linspace(-3.0, -0.3, 10) for b2 in np.linspace(-4.0, 4.0, 10))
    rng = np.random.default_rng(SEED)
    dm = 0.0
    for _ in range(50):
        c = (rng.uniform(0, 2 * math.pi), rng.uniform(-3, -0.3), rng.uniform(-1, 1), rng.uniform(-4, 4))
        p = fibration.chart_inverse(c, lagr, prof)
        dm = max(dm, fibration.darboux_residual(fibration.darboux_matrix(p, lagr, prof)))
    witness = fibration.darboux_residual(fibration.darboux_matrix([0.0, 1.0, 1.0, 0.0], naive, prof))
    ok = abs(d0 - 0.375) <= 1e-5 and dl <= 1e-5 and dm <= 1e-4 and witness >= 1e-2
    return ok, 60.0, (f"naive defect {d0:.8f} vs 0.375, lagrangianized defect {dl:.2e} <= 1e-5, "
                      f"Darboux residual {dm:.2e} <= 1e-4, naive witness {witness:.3f} >= 1e-2")


def criterion_8():
    prof = Profile.linear(1.0)
    rng = np.random.default_rng(SEED)
    bases = [(-2 / 3, 0.0)] + [(rng.uniform(-5, -0.1), rng.uniform(-5, 5)) for _ in range(9)]
    lats = [fibration.period_generator(b, prof) for b in bases]
    ret = max(pl.return_distance for pl in lats)
    near = min(pl.min_h2_distance for pl in lats)
    ok = ret <= 1e-12 and near > 1e-3 and all(pl.rank == 1 for pl in lats)
    return ok, 5.0, f"H1 period return {ret:.1e} <= 1e-12, closest H2 return {near:.2e} > 1e-3, rank 1"


def criterion_9():
    rng = np.random.default_rng(SEED)
    prof = Profile.linear(1.0)
    perr = agree = 0.0
    for i in range(100):
        e = IsometryElement(actions.canonical_sign(_random_sl2(rng)), rng.uniform(0, 2 * math.pi),
                            bool(i & 1), bool(i & 2))
        h = lambda q, e=e: actions.isometry_apply(e, q)
        got = actions.recover_parameters(h, rng=rng)
        perr = max(perr, actions.parameter_error(e, got))
        for p in geometry.random_points(rng, 5):
            agree = max(agree, float(np.abs(actions.isometry_apply(got, p) - h(p)).max()))
    pts = geometry.random_points(rng, 20)
    iso = {}
    for f1 in (False, True):
        for f2 in (False, True):
            e = IsometryElement(_random_sl2(rng), rng.uniform(0, 2 * math.pi), f1, f2)
            iso[(int(f1), int(f2))] = actions.isometry_residual(e, pts, prof)
    ok = perr <= 1e-6 and agree <= 1e-6 and max(iso.values()) <= 1e-7
    isos = ", ".join(f"{k}: {v:.1e}" for k, v in sorted(iso.items()))
    return ok, 10.0, (f"parameter error {perr:.1e} <= 1e-6, map agreement {agree:.1e} <= 1e-6, "
                      f"isometry residual by flips {{{isos}}} <= 1e-7")


def criterion_10():
    with tempfile.TemporaryDirectory() as tmp:
        texts = []
        for name in ("a.json", "b.json"):
            path = os.path.join(tmp, name)
            main(["check", "--seed", str(SEED), "--out", path])
            with open(path, "rb") as fh:
                texts.append(fh.read())
    n = len(json.loads(texts[0]))
    return texts[0] == texts[1], None, f"two check runs byte-identical: {texts[0] == texts[1]} ({n} invariants)"


TITLES = {
    1: "pseudo-Kaehler axioms",
    2: "Hamiltonian field cross-validation",
    3: "flow checks",
    4: "moment maps",
    5: "curvature two-oracle agreement",
    6: "scalar curvature bound",
    7: "Lagrangian section and Darboux chart",
    8: "period lattice",
    9: "isometry recovery and flips",
    10: "determinism",
}


def evaluate(n):
    start = time.perf_counter()
    ok, budget, detail = globals()[f"criterion_{n}"]()
    elapsed = time.perf_counter() - start
    in_time = budget is None or elapsed < budget
    limit = f" < {budget:.0f} s" if budget else ""
    line = (f"[{'PASS' if ok and in_time else 'FAIL'}] {n} {TITLES[n]}: {detail}; "
            f"runtime {elapsed:.1f} s{limit}")
    return ok and in_time, line


def _run(n, record):
    ok, line = evaluate(n)
    record(line)
    print(line)
    assert ok, line


def test_criterion_1(record_criterion):
    _run(1, record_criterion)


def test_criterion_2(record_criterion):
    _run(2, record_criterion)


def test_criterion_3(record_criterion):
    _run(3, record_criterion)


def test_criterion_4(record_criterion):
    _run(4, record_criterion)


def test_criterion_5(record_criterion):
    _run(5, record_criterion)


def test_criterion_6(record_criterion):
    _run(6, record_criterion)


def test_criterion_7(record_criterion):
    _run(7, record_criterion)


def test_criterion_8(record_criterion):
    _run(8, record_criterion)


def test_criterion_9(record_criterion):
    _run(9, record_criterion)


def test_criterion_10(record_criterion):
    _run(10, record_criterion)


if __name__ == "__main__":
    results = [evaluate(n) for n in TITLES]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
