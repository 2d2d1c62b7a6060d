"""Gaussian quaternionic matrices and their complex adjoints."""

from dataclasses import dataclass

import numpy as np

from .quaternion import qmul
from .rng import as_stream


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


class QuaternionMatrix:
    """Square matrix of quaternions stored as an ``(n, n, 4)`` float array."""

    def __init__(self, data):
        data = np.array(data, dtype=float)
        if data.ndim != 3 or data.shape[0] != data.shape[1] or data.shape[2] != 4:
            raise ValueError(f"expected shape (n, n, 4), got {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("quaternion matrix entries must be finite")
        data.setflags(write=False)
        self.data = data

    @property
    def n(self):
        return self.data.shape[0]

    @classmethod
    def from_parts(cls, a1, a2):
        """Build ``A = A1 + A2 j`` from complex matrices A1, A2."""
        a1 = np.asarray(a1, dtype=complex)
        a2 = np.asarray(a2, dtype=complex)
        return cls(np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1))

    def parts(self):
        d = self.data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]

    def apply(self, x):
        """Matrix-vector product ``A X`` for a quaternion vector of shape (n, 4)."""
        x = np.asarray(x, dtype=float)
        return qmul(self.data, x[None, :, :]).sum(axis=1)

    def __repr__(self):
        return f"QuaternionMatrix(n={self.n})"


class ComplexAdjoint:
    """The 2n x 2n complex matrix ``[[A1, A2], [-conj(A2), conj(A1)]]``."""

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        m = matrix.shape[0]
        if matrix.shape != (m, m) or m % 2:
            raise ValueError(f"complex adjoint must be 2n x 2n, got {matrix.shape}")
        self.matrix = matrix

    @property
    def n(self):
        return self.matrix.shape[0] // 2

    def blocks(self):
        n = self.n
        m = self.matrix
        return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]

    def symplectic_defect(self):
        """max |J M J^-1 - conj(M)| with J = [[0, I], [-I, 0]]."""
        j = symplectic_j(self.n)
        return float(np.max(np.abs(j @ self.matrix @ j.T - self.matrix.conj())))


def symplectic_j(n):
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def sample_ginibre_quaternion(cfg, rng=None):
    """Draw X(n): i.i.d. entries whose four components are N(0, 1/(4n)).

    Components are drawn in row-major entry order, (w, x, y, z) within an
    entry, from ``RandomStream(cfg.seed)`` unless an explicit stream is given.
    """
    stream = as_stream(cfg.seed if rng is None else rng)
    n = cfg.n
    g = stream.normal((n, n, 4), scale=np.sqrt(1.0 / (4 * n)))
    return QuaternionMatrix(g)


def complex_adjoint(a):
    a1, a2 = a.parts()
    top = np.hstack([a1, a2])
    bottom = np.hstack([-a2.conj(), a1.conj()])
    return ComplexAdjoint(np.vstack([top, bottom]))


def lift_vector(v):
    """Map an adjoint eigenvector ``(Y, -conj(Z))`` back to ``X = Y + Z j``."""
    v = np.asarray(v, dtype=complex)
    n = v.shape[0] // 2
    y = v[:n]
    z = -v[n:].conj()
    return np.stack([y.real, y.imag, z.real, z.imag], axis=-1)


def right_eigen_residuals(a, lam, x):
    """Residuals of ``A X = X lam`` and of the stacked adjoint eigen-equation."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ValueError("eigenvector must be nonzero")
    lam = complex(lam)
    lamq = np.array([lam.real, lam.imag, 0.0, 0.0])
    r_quat = a.apply(x) - qmul(x, lamq)
    y = x[:, 0] + 1j * x[:, 1]
    z = x[:, 2] + 1j * x[:, 3]
    v = np.concatenate([y, -z.conj()])
    m = complex_adjoint(a).matrix
    r_cplx = m @ v - lam * v
    scale = max(1.0, np.abs(m).max()) * np.linalg.norm(x)
    return float(np.linalg.norm(r_quat) / scale), float(np.linalg.norm(r_cplx) / scale)


def verify_right_eigen_equivalence(a, lam, x, tol=1e-8):
    """True iff "A X = X lam" and the adjoint form agree (both hold or both fail)."""
    r_quat, r_cplx = right_eigen_residuals(a, lam, x)
    return (r_quat <= tol) == (r_cplx <= tol)
