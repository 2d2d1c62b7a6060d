"""Empirical spectral measures, conjugation classes and goodness-of-fit statistics."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .quaternion import (canonical_form_array, complex_to_quat, conjugate_by_array,
                         sample_unit_sphere)
from .rng import as_stream

log = logging.getLogger(__name__)

ZERO_RADIUS = 1e-12


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Weighted atoms in C (complex array) or H (``(m, 4)`` array)."""

    kind: str
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.kind not in ("complex", "quaternion"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")

    @classmethod
    def uniform(cls, points, kind="complex"):
        pts = np.asarray(points)
        return cls(kind, pts, np.full(pts.shape[0], 1.0 / pts.shape[0]))

    def __len__(self):
        return self.points.shape[0]

    @property
    def real_part(self):
        return self.points.real if self.kind == "complex" else self.points[:, 0]

    @property
    def modulus(self):
        if self.kind == "complex":
            return np.abs(self.points)
        return np.sqrt(np.sum(self.points ** 2, axis=1))

    @property
    def argument(self):
        if self.kind != "complex":
            raise TypeError("argument is defined for complex measures only")
        return np.angle(self.points)


@dataclass(frozen=True)
class ClassSample:
    """One uniformly drawn element ``c_i = u_i z_i u_i*`` of each similarity class."""

    reps: np.ndarray
    units: np.ndarray
    classes: np.ndarray

    @property
    def radii(self):
        return np.abs(self.reps.imag)

    def canonical_defect(self):
        return float(np.max(np.abs(canonical_form_array(self.classes) - self.reps)))


def esd(spec):
    """Uniform measure over all 2n eigenvalues."""
    return EmpiricalMeasure.uniform(np.asarray(spec.all_eigs, dtype=complex))


def pushforward_half_plane(m):
    """Image under ``z -> Re z + i |Im z|``; atoms landing on the same point merge."""
    if m.kind != "complex":
        raise TypeError("pushforward_half_plane needs a complex measure")
    z = m.points.real + 1j * np.abs(m.points.imag)
    keys = np.stack([z.real, z.imag], axis=1)
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    w = np.bincount(inv.ravel(), weights=m.weights, minlength=uniq.shape[0])
    return EmpiricalMeasure("complex", uniq[:, 0] + 1j * uniq[:, 1], w / w.sum())


def sample_classes(spec, rng):
    """Draw independent Haar unit quaternions and conjugate each upper eigenvalue."""
    reps = np.asarray(spec.upper, dtype=complex)
    units = sample_unit_sphere(as_stream(rng), size=reps.size)
    # u z u* = Re z + Im z (u i u*): the real part is carried over untouched
    axis = conjugate_by_array(units, complex_to_quat(np.full(reps.size, 1j)))[:, 1:]
    classes = np.column_stack([reps.real, reps.imag[:, None] * axis])
    return ClassSample(reps, units, classes)


def class_weighted_measure(cs):
    """Weights proportional to the class masses ``4 pi r_i^2``."""
    r = cs.radii
    keep = r >= ZERO_RADIUS
    dropped = int((~keep).sum())
    if dropped:
        log.info("dropped %d zero-radius class(es)", dropped)
    if not np.any(keep):
        raise ValueError("all similarity classes have zero radius")
    mass = 4.0 * math.pi * r[keep] ** 2
    return EmpiricalMeasure("quaternion", cs.classes[keep], mass / mass.sum())


def class_volume(cs):
    """Total class mass ``sum 4 pi r_i^2``."""
    return float(np.sum(4.0 * math.pi * cs.radii ** 2))


def rho_density(q):
    """Limit density ``1 / (2 pi^2 |Im q|^2)`` on the closed unit ball of H."""
    q = np.asarray(q.to_array() if hasattr(q, "to_array") else q, dtype=float)
    im2 = np.sum(q[..., 1:] ** 2, axis=-1)
    inside = np.sum(q ** 2, axis=-1) <= 1.0
    with np.errstate(divide="ignore"):
        out = np.where(inside, 1.0 / (2.0 * math.pi ** 2 * im2), 0.0)
    return out if out.ndim else float(out)


def semicircle_cdf(x):
    x = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    return 0.5 + (x * np.sqrt(1.0 - x * x) + np.arcsin(x)) / math.pi


def disk_radial_cdf(r):
    return np.clip(np.asarray(r, dtype=float), 0.0, 1.0) ** 2


def uniform_angle_cdf(t):
    return (np.clip(np.asarray(t, dtype=float), -math.pi, math.pi) + math.pi) / (2.0 * math.pi)


def ball4_radial_cdf(r):
    return np.clip(np.asarray(r, dtype=float), 0.0, 1.0) ** 4


def limit_marginals():
    """CDFs of the real part (semicircle on [-1, 1]) and of the modulus (r^2)."""
    return semicircle_cdf, disk_radial_cdf


def sample_uniform_ball4(rng, size):
    """Uniform points of the unit ball of R^4 by rejection from the cube."""
    rng = as_stream(rng)
    out = np.empty((0, 4))
    while out.shape[0] < size:
        need = size - out.shape[0]
        # acceptance rate pi^2 / 32
        cube = 2.0 * rng.uniform((int(need * 3.5) + 16, 4)) - 1.0
        out = np.vstack([out, cube[np.sum(cube ** 2, axis=1) <= 1.0]])
    return out[:size]


def ecdf(sample):
    """Right-continuous empirical CDF of a sample, as a vectorized function."""
    xs = np.sort(np.asarray(sample, dtype=float))

    def cdf(x):
        return np.searchsorted(xs, x, side="right") / xs.size

    return cdf


def ks_statistic(sample, cdf, weights=None):
    """One-sample Kolmogorov-Smirnov distance ``sup |F_emp - F|``.

    ``weights`` gives a weighted empirical CDF.  ``cdf`` may itself be an
    empirical step function, in which case both one-sided limits at each
    sample point are compared.
    """
    x = np.asarray(sample, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty sample")
    w = np.full(x.size, 1.0 / x.size) if weights is None else np.asarray(weights, dtype=float)
    w = w / w.sum()
    order = np.argsort(x, kind="stable")
    x, w = x[order], w[order]
    # merge tied values
    uniq, start = np.unique(x, return_index=True)
    cw = np.cumsum(w)
    upper = cw[np.r_[start[1:] - 1, x.size - 1]]
    lower = np.r_[0.0, upper[:-1]]
    f = np.asarray(cdf(uniq), dtype=float)
    f_left = np.asarray(cdf(np.nextafter(uniq, -np.inf)), dtype=float)
    return float(max(np.max(np.abs(upper - f)), np.max(np.abs(f_left - lower))))


def ks_two_sample(sample, reference, weights=None):
    """Exact sup distance between a (weighted) sample ECDF and a reference sample ECDF."""
    x = np.asarray(sample, dtype=float).ravel()
    ref = np.sort(np.asarray(reference, dtype=float).ravel())
    w = np.full(x.size, 1.0 / x.size) if weights is None else np.asarray(weights, dtype=float)
    order = np.argsort(x, kind="stable")
    x, cw = x[order], np.cumsum(w[order]) / np.sum(w)
    t = np.union1d(x, ref)
    k = np.searchsorted(x, t, side="right")
    f1 = np.where(k > 0, cw[np.maximum(k - 1, 0)], 0.0)
    f2 = np.searchsorted(ref, t, side="right") / ref.size
    return float(np.max(np.abs(f1 - f2)))


def product_independence_stat(xs, ys, g, h):
    """``(1/n) sum a_i b_i`` with ``a = g(x) - mean g(x)`` and ``b = h(y) - mean h(y)``."""
    gx = np.asarray(g(np.asarray(xs)), dtype=float)
    hy = np.asarray(h(np.asarray(ys)), dtype=float)
    if gx.shape[0] != hy.shape[0]:
        raise ValueError("samples must have equal length")
    # shifted means keep constant sequences exactly centred
    a = gx - (gx[0] + np.mean(gx - gx[0], axis=0))
    b = hy - (hy[0] + np.mean(hy - hy[0], axis=0))
    return float(np.mean(a * b))


@dataclass(frozen=True)
class KSReport:
    test_name: str
    n: int
    replicas: int
    ks: float
    tolerance: float

    @property
    def passed(self):
        return self.ks <= self.tolerance

    def to_dict(self):
        return {"test_name": self.test_name, "n": self.n, "replicas": self.replicas,
                "ks": self.ks, "tolerance": self.tolerance, "pass": self.passed}
