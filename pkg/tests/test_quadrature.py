import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qginibre.quadrature import QuadratureError, integrate


def test_polynomial_exact():
    assert integrate(lambda x: x ** 5 - 3 * x ** 2, -1.0, 2.0) == pytest.approx(10.5 - 9.0, abs=1e-13)


def test_smooth_functions():
    assert integrate(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-12)
    assert integrate(np.exp, 0.0, 1.0) == pytest.approx(math.e - 1, abs=1e-12)


def test_log_singularity_with_breakpoint():
    # int_{-1}^{1} log|x| dx = -2
    val = integrate(lambda x: np.log(np.abs(x)), -1.0, 1.0, tol=1e-10, breakpoints=(0.0,))
    assert val == pytest.approx(-2.0, abs=1e-9)


def test_endpoint_log_singularity():
    # int_0^1 log(x) dx = -1
    assert integrate(np.log, 0.0, 1.0, tol=1e-11) == pytest.approx(-1.0, abs=1e-10)


def test_kink_breakpoint():
    assert integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, breakpoints=(0.3,)) == pytest.approx(0.29, abs=1e-13)


@given(st.floats(0.01, 0.99))
def test_log_of_circle_distance(r):
    # mean value property: int log|r - e^{it}| dt = 0 for r < 1
    val = integrate(lambda t: np.log(np.abs(r - np.exp(1j * t))), -math.pi, math.pi,
                    tol=1e-11, breakpoints=(0.0,))
    assert abs(val) <= 1e-10


def test_nonconvergence_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: 1.0 / x, 0.0, 1.0, tol=1e-10, max_panels=200)
