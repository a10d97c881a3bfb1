import math

import numpy as np
import pytest

from pkahler.exceptions import DivergenceError, QuadratureError
from pkahler.numerics import adaptive_simpson, derivative, jacobian, partials, solve_decreasing, step_for


def test_step_scales_with_magnitude():
    assert step_for(0.5) == 2.0**-17
    assert 1e-3 < step_for(-300.0) < 6e-3
    x = 0.7
    assert (x + step_for(x)) - (x - step_for(x)) == 2 * step_for(x)


def test_derivative_of_sin():
    assert derivative(math.sin, 0.3) == pytest.approx(math.cos(0.3), abs=1e-10)
    # Richardson should do no worse
    d = derivative(math.exp, 1.0, h=1e-2, richardson=True)
    assert abs(d - math.e) < 1e-8


def test_partials_leading_axis_is_direction():
    fn = lambda p: np.array([[p[0] * p[1], p[1] ** 2], [0.0, p[0]]])
    d = partials(fn, np.array([2.0, 3.0]))
    assert d.shape == (2, 2, 2)
    np.testing.assert_allclose(d[0], [[3.0, 0.0], [0.0, 1.0]], atol=1e-9)
    np.testing.assert_allclose(d[1], [[2.0, 6.0], [0.0, 0.0]], atol=1e-9)


def test_jacobian_of_linear_map():
    M = np.array([[1.0, 2.0, 0.0], [0.0, -1.0, 4.0]])
    J = jacobian(lambda p: M @ p, np.array([0.3, -0.1, 2.0]))
    np.testing.assert_allclose(J, M, atol=1e-9)


@pytest.mark.parametrize(
    "fn, a, b, exact",
    [
        (math.sin, 0.0, math.pi, 2.0),
        (lambda x: 1.0 / x, 1.0, math.e, 1.0),
        (lambda x: 0.75 / (1.0 - 1.5 * x), -2.0, -2.0 / 3.0, 0.5 * math.log(2.0)),
    ],
)
def test_adaptive_simpson_known_integrals(fn, a, b, exact):
    assert adaptive_simpson(fn, a, b, tol=1e-11) == pytest.approx(exact, abs=1e-10)


def test_adaptive_simpson_reversed_and_empty():
    assert adaptive_simpson(math.cos, 1.0, 0.0) == pytest.approx(-math.sin(1.0), abs=1e-9)
    assert adaptive_simpson(math.cos, 2.0, 2.0) == 0.0


def test_adaptive_simpson_gives_up_on_singularity():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: 1.0 / x if x else 1e300, 0.0, 1.0, tol=1e-12, max_depth=12)


def test_solve_decreasing_quadratic():
    f = lambda t: -t - t * t
    df = lambda t: -1.0 - 2.0 * t
    assert solve_decreasing(f, df, -6.0) == 2.0
    assert solve_decreasing(f, df, 0.0) == 0.0


def test_solve_decreasing_bounded_function_diverges():
    f = lambda t: -1.0 + math.exp(-t)
    df = lambda t: -math.exp(-t)
    with pytest.raises(DivergenceError):
        solve_decreasing(f, df, -2.0, max_doublings=30)
