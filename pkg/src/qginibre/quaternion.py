"""Quaternion arithmetic.

Scalar code uses the immutable :class:`Quaternion`; bulk work uses arrays
whose last axis holds the components ``(w, x, y, z)`` of
``w + x i + y j + z k``.  A complex number ``a + b i`` embeds as
``(a, b, 0, 0)``.
"""

from dataclasses import dataclass

import numpy as np

from .rng import as_stream

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a):
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    @classmethod
    def from_complex(cls, c):
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    def to_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        return multiply(self, _coerce(other))

    def __rmul__(self, other):
        return multiply(_coerce(other), self)

    def __truediv__(self, s):
        return Quaternion(self.w / s, self.x / s, self.y / s, self.z / s)

    def conj(self):
        return conj(self)

    def norm(self):
        return norm(self)

    def inverse(self):
        return inverse(self)

    def isclose(self, other, tol=1e-12):
        return bool(np.all(np.abs(self.to_array() - _coerce(other).to_array()) <= tol))


I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)


def _coerce(q):
    if isinstance(q, Quaternion):
        return q
    if isinstance(q, (int, float, complex, np.number)):
        return Quaternion.from_complex(q)
    return Quaternion.from_array(q)


# -- array kernels -----------------------------------------------------------

def qmul(a, b):
    """Hamilton product of quaternion arrays, broadcasting over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack([
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    ], axis=-1)


def qconj(a):
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(a):
    return np.sqrt(np.sum(np.asarray(a, dtype=float) ** 2, axis=-1))


def complex_to_quat(c):
    c = np.asarray(c, dtype=complex)
    out = np.zeros(c.shape + (4,))
    out[..., 0] = c.real
    out[..., 1] = c.imag
    return out


def canonical_form_array(a):
    """``Re(q) + |Im(q)| i`` for each quaternion in the array."""
    a = np.asarray(a, dtype=float)
    return a[..., 0] + 1j * np.sqrt(np.sum(a[..., 1:] ** 2, axis=-1))


def conjugate_by_array(u, q):
    """``u q u*`` elementwise; ``u`` must hold unit quaternions."""
    return qmul(qmul(u, q), qconj(u))


# -- scalar operations -------------------------------------------------------

def multiply(a, b):
    return Quaternion.from_array(qmul(_coerce(a).to_array(), _coerce(b).to_array()))


def conj(q):
    q = _coerce(q)
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm(q):
    q = _coerce(q)
    return float(np.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z))


def re(q):
    return float(_coerce(q).w)


def im(q):
    q = _coerce(q)
    return Quaternion(0.0, q.x, q.y, q.z)


def inverse(q):
    q = _coerce(q)
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 == 0.0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return conj(q) / n2


def canonical_form(q):
    """The complex representative ``Re(q) + |Im(q)| i`` of the similarity class of q."""
    q = _coerce(q)
    return complex(q.w, float(np.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)))


def unit(q):
    """Normalize q onto the unit sphere."""
    q = _coerce(q)
    n = norm(q)
    if n == 0.0:
        raise ValueError("cannot normalize the zero quaternion")
    return q / n


def conjugate_by(u, q):
    """Return ``u q u*`` for a unit quaternion u."""
    u = _coerce(u)
    if abs(norm(u) - 1.0) > UNIT_TOL:
        raise ValueError(f"conjugating element must have unit norm, got |u|={norm(u)!r}")
    return Quaternion.from_array(conjugate_by_array(u.to_array(), _coerce(q).to_array()))


# -- sampling ----------------------------------------------------------------

def _sphere(rng, dim, size):
    rng = as_stream(rng)
    count = 1 if size is None else int(size)
    g = rng.normal((count, dim))
    r = np.sqrt(np.sum(g * g, axis=1))
    bad = r == 0.0
    while np.any(bad):
        g[bad] = rng.normal((int(bad.sum()), dim))
        r = np.sqrt(np.sum(g * g, axis=1))
        bad = r == 0.0
    return g / r[:, None]


def sample_unit_sphere(rng, size=None):
    """Haar-distributed unit quaternion(s) from normalized Gaussian 4-vectors.

    Returns a :class:`Quaternion` when ``size`` is None, else an array of
    shape ``(size, 4)``.
    """
    s = _sphere(rng, 4, size)
    return Quaternion.from_array(s[0]) if size is None else s


def sample_unit_sphere_im(rng, size=None):
    """Uniform point(s) on the unit sphere of pure imaginary quaternions."""
    s = _sphere(rng, 3, size)
    out = np.zeros((s.shape[0], 4))
    out[:, 1:] = s
    return Quaternion.from_array(out[0]) if size is None else out
