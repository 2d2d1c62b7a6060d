import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linear_sum_assignment

from qginibre import eig
from qginibre.eig import EigenSolverError, PairingError, adjoint_spectrum, eigenvalues, hessenberg, pair_spectrum
from qginibre.matrix_model import EnsembleConfig, complex_adjoint, sample_ginibre_quaternion
from qginibre.rng import RandomStream


def match(a, b):
    d = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    r, c = linear_sum_assignment(d)
    return d[r, c].max()


def cgauss(rs, shape):
    return rs.normal(shape) + 1j * rs.normal(shape)


def test_small_examples():
    assert match(eigenvalues([[0, 1], [-1, 0]]), [1j, -1j]) <= 1e-15
    assert match(eigenvalues([[0, 1], [1, 0]]), [1, -1]) <= 1e-15
    d = np.array([3.0, -1 + 2j, 0.5j, 7.0])
    assert match(eigenvalues(np.diag(d)), d) == 0.0
    assert eigenvalues(np.zeros((0, 0))).size == 0
    assert eigenvalues([[2.0 + 1j]])[0] == 2.0 + 1j


def test_input_validation():
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues([[np.inf, 0], [0, 1]])


@pytest.mark.parametrize("size", [5, 20, 50, 200])
def test_known_spectrum(size):
    rs = RandomStream(size)
    q, _ = np.linalg.qr(cgauss(rs, (size, size)))
    d = cgauss(rs, size)
    m = q @ np.diag(d) @ q.conj().T
    assert match(eigenvalues(m), d) <= 1e-8 * np.linalg.norm(m, 2)


@pytest.mark.parametrize("size", [1, 7, 30, 120])
def test_agrees_with_lapack(size):
    m = cgauss(RandomStream(40 + size), (size, size))
    assert match(eigenvalues(m), np.linalg.eigvals(m)) <= 1e-10 * np.linalg.norm(m, 2)


def test_real_nonnormal_and_graded_inputs():
    rs = RandomStream(3)
    m = rs.normal((40, 40))
    assert match(eigenvalues(m), np.linalg.eigvals(m)) <= 1e-9 * np.linalg.norm(m, 2)
    g = np.diag(10.0 ** np.arange(-4, 4)) @ rs.normal((8, 8)) @ np.diag(10.0 ** -np.arange(-4, 4))
    assert match(eigenvalues(g), np.linalg.eigvals(g)) <= 1e-8 * np.linalg.norm(g, 2)
    jordan = np.diag(np.ones(5), 1)
    assert np.max(np.abs(eigenvalues(jordan))) <= 1e-2


@given(st.integers(0, 2 ** 32), st.integers(2, 50))
def test_similarity_invariance(seed, size):
    rs = RandomStream(seed)
    m = cgauss(rs, (size, size))
    p = np.eye(size) + 0.3 * cgauss(rs, (size, size)) / np.sqrt(size)
    cond = np.linalg.cond(p)
    if cond > 100:
        return
    pm = p @ m @ np.linalg.inv(p)
    assert match(eigenvalues(pm), eigenvalues(m)) <= 1e-7 * cond * np.linalg.norm(m, 2)


@given(st.integers(0, 2 ** 32), st.integers(1, 20))
def test_trace_and_determinant(seed, size):
    m = cgauss(RandomStream(seed), (size, size))
    e = eigenvalues(m)
    nrm = np.linalg.norm(m, 2)
    assert abs(e.sum() - np.trace(m)) <= 1e-9 * nrm * size
    det = np.linalg.det(m)
    assert abs(np.prod(e) - det) <= 1e-7 * abs(det)


def test_hessenberg_form_and_similarity():
    m = cgauss(RandomStream(5), (12, 12))
    h = hessenberg(m)
    assert np.all(np.tril(h, -2) == 0) or np.max(np.abs(np.tril(h, -2))) <= 1e-14
    assert abs(np.trace(h) - np.trace(m)) <= 1e-12 * np.abs(m).sum()
    assert np.isclose(np.linalg.norm(h), np.linalg.norm(m))
    assert match(np.linalg.eigvals(h), np.linalg.eigvals(m)) <= 1e-10


def test_iteration_budget(monkeypatch):
    monkeypatch.setattr(eig, "MAX_ITS_PER_EIG", 0)
    with pytest.raises(EigenSolverError) as err:
        eigenvalues(cgauss(RandomStream(1), (6, 6)))
    assert err.value.size == 6 and err.value.deflated < 6


def test_pairing_examples():
    sp = pair_spectrum([1 + 2j, 1 - 2j])
    assert sp.n == 1 and sp.upper[0] == 1 + 2j
    sp = pair_spectrum([3.0, 3.0])
    assert sp.upper[0] == 3.0 and sp.upper[0].imag == 0.0
    sp = pair_spectrum([2 - 1j, 5.0, 2 + 1j, 5.0])
    assert np.array_equal(sp.upper, [2 + 1j, 5.0])
    assert np.array_equal(sp.all_eigs, [2 + 1j, 5.0, 2 - 1j, 5.0])


def test_pairing_errors():
    with pytest.raises(PairingError):
        pair_spectrum([1.0, 2.0, 3.0])
    with pytest.raises(PairingError):
        pair_spectrum([1 + 1j, 2 + 1j])


@pytest.mark.parametrize("n", [5, 50, 200])
def test_adjoint_spectrum_pairs(n):
    x = sample_ginibre_quaternion(EnsembleConfig(n, seed=n))
    adj = complex_adjoint(x)
    sp = adjoint_spectrum(adj)
    assert sp.pairing_residual <= 1e-8
    assert np.all(sp.upper.imag >= 0)
    # multiset identity all_eigs = upper + conj(upper), against LAPACK
    assert match(sp.all_eigs, np.linalg.eigvals(adj.matrix)) <= 1e-8
