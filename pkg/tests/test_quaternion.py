import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qginibre import quaternion as qt
from qginibre.quaternion import I, J, K, ONE, Quaternion
from qginibre.rng import RandomStream
from qginibre.spectral_stats import semicircle_cdf, ks_statistic

finite = st.floats(-10, 10, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def left_matrix(q):
    """Real 4x4 matrix of p -> q p, written out from the multiplication table."""
    w, x, y, z = q
    return np.array([[w, -x, -y, -z],
                     [x, w, -z, y],
                     [y, z, w, -x],
                     [z, -y, x, w]])


def close(a, b, tol=1e-12):
    scale = max(1.0, qt.norm(a), qt.norm(b))
    return np.allclose(a.to_array(), b.to_array(), rtol=0, atol=tol * scale)


def test_basis_products():
    assert I * J == K
    assert J * I == -K
    assert J * K == I and K * I == J
    for u in (I, J, K):
        assert u * u == -ONE


def test_examples():
    q = Quaternion(1.0, -2.0, 0.5, 3.0)
    assert qt.multiply(ONE, q) == q
    assert qt.multiply(Quaternion(1, 1, 0, 0), Quaternion(1, -1, 0, 0)).isclose(Quaternion(2, 0, 0, 0))
    assert qt.norm(ONE) == 1.0
    assert qt.norm(Quaternion(1, 1, 1, 1)) == 2.0
    assert qt.canonical_form(J) == 1j
    assert qt.canonical_form(5.0) == 5.0
    assert qt.canonical_form(Quaternion(1, 2, -2, 1)) == 1 + 3j
    assert qt.re(q) == 1.0 and qt.im(q) == Quaternion(0, -2, 0.5, 3)


@given(quats, quats)
def test_product_matches_matrix_representation(a, b):
    ref = left_matrix(a) @ b.to_array()
    assert np.allclose(qt.multiply(a, b).to_array(), ref, atol=1e-12 * (1 + qt.norm(a) * qt.norm(b)))


@given(quats, quats, quats)
def test_associativity(a, b, c):
    lhs, rhs = (a * b) * c, a * (b * c)
    assert np.allclose(lhs.to_array(), rhs.to_array(),
                       atol=1e-12 * max(1.0, qt.norm(a) * qt.norm(b) * qt.norm(c)))


@given(quats, quats)
def test_norm_multiplicative_and_conj(a, b):
    assert math.isclose(qt.norm(a * b), qt.norm(a) * qt.norm(b), rel_tol=1e-12, abs_tol=1e-300)
    assert qt.conj(qt.conj(a)) == a
    assert close(qt.conj(a * b), qt.conj(b) * qt.conj(a))
    n2 = a * qt.conj(a)
    assert math.isclose(n2.w, qt.norm(a) ** 2, rel_tol=1e-12, abs_tol=1e-12)
    assert abs(n2.x) + abs(n2.y) + abs(n2.z) <= 1e-12 * max(1.0, n2.w)


@given(quats)
def test_inverse(q):
    if qt.norm(q) < 1e-3:
        return
    assert close(q * qt.inverse(q), ONE)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        qt.inverse(Quaternion(0, 0, 0, 0))


@given(quats, st.integers(0, 2 ** 32))
def test_conjugation_invariants(q, seed):
    u = qt.sample_unit_sphere(RandomStream(seed))
    c = qt.conjugate_by(u, q)
    assert abs(qt.canonical_form(c) - qt.canonical_form(q)) <= 1e-10 * max(1.0, qt.norm(q))
    assert math.isclose(qt.norm(c), qt.norm(q), rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(qt.re(qt.conjugate_by(u, Quaternion(1, 2, 0, 0))), 1.0, abs_tol=1e-12)


def test_conjugate_by_identity_and_unit_check():
    q = Quaternion(0.3, 1, 2, 3)
    assert qt.conjugate_by(ONE, q) == q
    with pytest.raises(ValueError):
        qt.conjugate_by(Quaternion(2, 0, 0, 0), q)


def test_array_kernels_agree_with_scalar_ops():
    rs = RandomStream(11)
    a, b = rs.normal((50, 4)), rs.normal((50, 4))
    prod = qt.qmul(a, b)
    for k in range(50):
        assert np.allclose(prod[k], left_matrix(a[k]) @ b[k], atol=1e-13)
    assert np.allclose(qt.qnorm(a), np.linalg.norm(a, axis=1))
    z = np.array([1 + 2j, -3j])
    assert np.array_equal(qt.complex_to_quat(z), [[1, 2, 0, 0], [0, -3, 0, 0]])


def test_sphere_sampling_statistics():
    s = qt.sample_unit_sphere(RandomStream(21), size=100_000)
    assert np.allclose(np.linalg.norm(s, axis=1), 1.0, atol=1e-12)
    assert np.all(np.abs(s.mean(axis=0)) <= 0.01)
    assert abs(np.mean(s[:, 0] ** 2) - 0.25) <= 0.01
    assert ks_statistic(s[:, 0], semicircle_cdf) <= 0.01


def test_imaginary_sphere_sampling():
    s = qt.sample_unit_sphere_im(RandomStream(22), size=20_000)
    assert np.all(s[:, 0] == 0)
    assert np.allclose(np.linalg.norm(s, axis=1), 1.0)
    assert np.all(np.abs(s[:, 1:].mean(axis=0)) <= 0.02)
    one = qt.sample_unit_sphere_im(RandomStream(22))
    assert isinstance(one, Quaternion) and one.w == 0


def test_unit():
    assert qt.unit(Quaternion(0, 3, 4, 0)).isclose(Quaternion(0, 0.6, 0.8, 0))
    with pytest.raises(ValueError):
        qt.unit(Quaternion(0, 0, 0, 0))
