import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pkahler import Profile
from pkahler.exceptions import DomainError
from pkahler.profile import validate


def test_eval_closed_forms():
    assert Profile.linear(1.0).eval(0.0) == (0.0, -1.0, 0.0, 0.0)
    assert Profile.linear(2.0).eval(3.0) == (-6.0, -2.0, 0.0, 0.0)
    assert Profile.quadratic(1.0).eval(2.0) == (-6.0, -5.0, -2.0, 0.0)


def test_eval_negative_t_rejected(linear):
    with pytest.raises(DomainError):
        linear.eval(-1e-3)


def test_nonpositive_k_rejected():
    with pytest.raises(ValueError):
        Profile.linear(0.0)
    with pytest.raises(ValueError):
        Profile.builtin("cubic")


@pytest.mark.parametrize(
    "profile, s, t",
    [(Profile.linear(1.0), -1.0, 1.0), (Profile.linear(2.0), -3.0, 1.5), (Profile.quadratic(1.0), -6.0, 2.0)],
)
def test_inverse_examples(profile, s, t):
    got = profile.inverse(s)
    assert got == pytest.approx(t, rel=1e-12)
    assert abs(profile.f(got) - s) <= 1e-12 * (1 + abs(s))


def test_inverse_positive_target_rejected(linear):
    with pytest.raises(DomainError):
        linear.inverse(0.1)


@settings(max_examples=60, deadline=None)
@given(t=st.floats(0.0, 1e6), fam=st.sampled_from(["linear", "quadratic"]), k=st.floats(0.1, 10.0))
def test_inverse_roundtrip(t, fam, k):
    prof = Profile.builtin(fam, k)
    back = prof.inverse(prof.f(t))
    assert abs(back - t) <= 1e-10 * max(1.0, t)


@pytest.mark.parametrize("k, t, expected", [(1.0, 0.0, 1.0), (1.0, 1.0, 0.25), (2.0, 1.0, 4.0 / 9.0)])
def test_g_factor_values(k, t, expected):
    assert Profile.linear(k).g_factor(t) == pytest.approx(expected, rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(t=st.floats(0.0, 1e4), k=st.floats(0.01, 100.0))
def test_g_factor_linear_identity(t, k):
    assert Profile.linear(k).g_factor(t) == pytest.approx(k * k / (1 + k * t) ** 2, rel=1e-12)


def test_validate_builtins_pass(builtin):
    rep = builtin.validate([0.0, 1.0, 10.0, 100.0])
    assert rep.passed, rep.failures
    assert rep.unbounded


def test_validate_increasing_profile_fails():
    bad = Profile(lambda t: (t, 1.0, 0.0, 0.0))
    rep = validate(bad, [0.0, 1.0, 2.0])
    assert not rep.passed
    assert any("f' >= 0" in msg for msg in rep.failures)


def test_validate_wrong_second_derivative_fails():
    bad = Profile(lambda t: (-t - t * t, -1.0 - 2.0 * t, -3.0, 0.0))
    rep = validate(bad, np.linspace(0, 5, 11))
    assert not rep.passed
    assert rep.derivative_mismatch["d2f"] > 1e-3
    assert any("d2f" in msg for msg in rep.failures)


def test_validate_bounded_profile_fails():
    # f = -t/(1+t) is decreasing but tends to -1
    sat = Profile(lambda t: (-t / (1 + t), -1 / (1 + t) ** 2, 2 / (1 + t) ** 3, -6 / (1 + t) ** 4))
    rep = validate(sat, [0.0, 1.0, 5.0])
    assert not rep.unbounded
    assert not rep.passed


def test_table_profile_interpolates(tmp_path):
    ts = np.linspace(0.0, 20.0, 401)
    rows = np.column_stack([ts, -ts - ts**2, -1 - 2 * ts, -2 * np.ones_like(ts), np.zeros_like(ts)])
    path = tmp_path / "quad.txt"
    np.savetxt(path, rows)
    tab = Profile.from_table(path)
    exact = Profile.quadratic(1.0)
    for t in (0.0, 0.37, 3.3, 19.9):
        np.testing.assert_allclose(tab.eval(t)[:2], exact.eval(t)[:2], rtol=1e-4, atol=1e-9)
    assert tab.inverse(-6.0) == pytest.approx(2.0, rel=1e-6)
    with pytest.raises(DomainError):
        tab.eval(25.0)


def test_table_profile_csv_and_bad_shape(tmp_path):
    path = tmp_path / "lin.csv"
    path.write_text("# t,f,f',f'',f'''\n0,0,-1,0,0\n1,-1,-1,0,0\n2,-2,-1,0,0\n")
    tab = Profile.from_table(path)
    assert tab.f(1.5) == pytest.approx(-1.5)
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 -1\n1 -1 -1\n")
    with pytest.raises(ValueError):
        Profile.from_table(bad)
