"""Logarithmic potentials of circle and disk measures.

Closed forms are paired with adaptive-quadrature evaluations of the defining
integrals; the latter serve as an independent check of the former.
"""

import math
from dataclasses import dataclass

import numpy as np

from .loggas import Potential
from .quadrature import integrate

TWO_PI = 2.0 * math.pi
ON_CIRCLE = 1e-14


@dataclass(frozen=True)
class CircleMeasureDensity:
    """Probability density on the unit circle with respect to ``dtheta / 2pi``."""

    weight: object
    name: str = "custom"

    def __call__(self, theta):
        return self.weight(np.asarray(theta, dtype=float))

    def total_mass(self, tol=1e-12):
        return integrate(lambda t: self(t) / TWO_PI, -math.pi, math.pi, tol=tol)

    def is_nonnegative(self, samples=4096):
        return bool(np.all(self(np.linspace(-math.pi, math.pi, samples)) >= 0))


HAAR = CircleMeasureDensity(lambda t: np.ones_like(t), "haar")
NU = CircleMeasureDensity(lambda t: 2.0 * np.sin(t) ** 2, "nu")


@dataclass(frozen=True)
class DiscreteMeasure:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if pts.shape != w.shape:
            raise ValueError("points and weights differ in length")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, points):
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        return cls(pts, np.full(pts.size, 1.0 / pts.size))


# -- closed forms ------------------------------------------------------------

def circle_log_integral(x, r):
    """``int_{-pi}^{pi} log|x - r e^{i theta}| dtheta`` (mean-value property)."""
    if r <= 0:
        raise ValueError("radius must be positive")
    ax = np.abs(x)
    return TWO_PI * np.log(np.maximum(ax, r))


def potential_uniform_disk(x):
    """Logarithmic potential of the uniform probability measure on the unit disk."""
    ax = np.abs(np.asarray(x, dtype=complex))
    with np.errstate(divide="ignore"):
        out = np.where(ax <= 1.0, 0.5 * (1.0 - ax ** 2), -np.log(ax))
    return out if out.ndim else float(out)


def potential_haar_circle(x):
    """Logarithmic potential of the uniform probability measure on the unit circle."""
    ax = np.abs(np.asarray(x, dtype=complex))
    with np.errstate(divide="ignore"):
        out = -np.log(np.maximum(ax, 1.0))
    return out if out.ndim else float(out)


def sin2_log_integral(r):
    """``int log|r - e^{i theta}| sin^2(theta) / pi dtheta`` for real r >= 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be >= 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r <= 1.0, 0.25 * r ** 2, 0.25 / r ** 2 + np.log(r))
    return out if out.ndim else float(out)


def poisson_integrals(r):
    """``(A1, A2)``: integrals of ``1`` and ``cos^2`` against ``1/(r^2 + 1 - 2 r cos)``."""
    r = float(r)
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 1.0:
        raise ValueError("Poisson integrals diverge at r = 1")
    if r < 1.0:
        d = 1.0 - r * r
        return TWO_PI / d, math.pi * (r * r + 1.0) / d
    d = r * r - 1.0
    return TWO_PI / d, math.pi * (1.0 / (r * r) + 1.0) / d


def sin2_log_integral_from_poisson(r):
    """The sin^2 log integral rebuilt by integration by parts from A1, A2 and
    the circle integral; agrees with :func:`sin2_log_integral` for r != 1."""
    a1, a2 = poisson_integrals(r)
    b = 2.0 * circle_log_integral(r, 1.0)
    # 2 I = -(r^2 + 1) A / (4 r) + B / 2 - pi / 2 with A = 2 r (A2 - A1);
    # I is the unweighted integral, so divide by pi at the end
    two_i = -0.5 * (r * r + 1.0) * (a2 - a1) + 0.5 * b - 0.5 * math.pi
    return float(two_i / (2.0 * math.pi))


def potential_nu(x):
    """Logarithmic potential of ``2 sin^2(theta) dtheta / 2pi`` on the unit circle."""
    x = np.asarray(x, dtype=complex)
    ax = np.abs(x)
    quad = x.real ** 2 - x.imag ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        outer = -quad / (4.0 * ax ** 4) - np.log(ax)
    out = np.where(ax <= 1.0, -0.25 * quad, outer)
    return out if out.ndim else float(out)


# -- quadrature oracles ------------------------------------------------------

def quad_potential(dens, x, tol=1e-12):
    """``int log|x - e^{i theta}|^-1 dens(theta) dtheta / 2pi`` by adaptive quadrature.

    The panel grid is split at ``arg(x)``, where the integrand peaks.  On the
    circle itself the log singularity limits the reachable accuracy, so a
    tolerance of at least 1e-6 is required there.
    """
    x = complex(x)
    on_circle = abs(abs(x) - 1.0) <= ON_CIRCLE
    if on_circle and tol < 1e-6:
        raise ValueError("on the unit circle the tolerance must be >= 1e-6")
    cut = math.atan2(x.imag, x.real) if x != 0 else 0.0
    if on_circle:
        # |e^{ia} - e^{it}| = 2 |sin((t - a) / 2)|, exact near the singular angle
        def f(t):
            with np.errstate(divide="ignore"):
                return -np.log(2.0 * np.abs(np.sin(0.5 * (t - cut)))) * dens(t) / TWO_PI
    else:
        def f(t):
            return -np.log(np.abs(x - np.exp(1j * t))) * dens(t) / TWO_PI
    return integrate(f, -math.pi, math.pi, tol=tol, breakpoints=(cut,))


def quad_potential_disk(x, tol=1e-10):
    """Potential of the uniform disk measure: radial integral of circle potentials.

    ``U(x) = int_0^1 2 rho (-log rho + U_circle(x / rho)) d rho`` where the
    inner circle potential is itself computed by :func:`quad_potential`.
    """
    x = complex(x)
    ax = abs(x)

    def ring(rhos):
        out = np.empty_like(rhos)
        for k, rho in enumerate(rhos):
            out[k] = 2.0 * rho * (-math.log(rho) + quad_potential(HAAR, x / rho, tol=1e-13))
        return out

    return integrate(ring, 0.0, 1.0, tol=tol, breakpoints=(ax,) if 0 < ax < 1 else ())


def quad_sin2_log_integral(r, tol=1e-12):
    def f(t):
        return np.log(np.abs(r - np.exp(1j * t))) * np.sin(t) ** 2 / math.pi
    return integrate(f, -math.pi, math.pi, tol=tol, breakpoints=(0.0,))


def quad_poisson_integrals(r, tol=1e-10):
    def den(t):
        return r * r + 1.0 - 2.0 * r * np.cos(t)
    a1 = integrate(lambda t: 1.0 / den(t), -math.pi, math.pi, tol=tol, breakpoints=(0.0,))
    a2 = integrate(lambda t: np.cos(t) ** 2 / den(t), -math.pi, math.pi, tol=tol, breakpoints=(0.0,))
    return a1, a2


# -- energies and the equilibrium conditions ----------------------------------

def weighted_energy(mu, v, chunk=2048):
    """``sum_{i != j} w_i w_j log|x_i - x_j|^-1 + sum_i w_i V(x_i)``."""
    x, w = mu.points, mu.weights
    total = 0.0
    for s in range(0, x.size, chunk):
        d = np.abs(x[s:s + chunk, None] - x[None, :])
        rows = np.arange(d.shape[0])
        d[rows, s + rows] = 1.0
        if np.any(d == 0):
            raise ValueError("weighted energy needs distinct points")
        total -= float(w[s:s + chunk] @ np.log(d) @ w)
    return total + float(np.sum(w * v(x)))


@dataclass(frozen=True)
class EquilibriumCheck:
    l_hat: float
    on_support_dev: float
    off_support_violation: float


def equilibrium_check(u, v, support, grid):
    """Test ``2U + V = l`` on the support and ``2U + V >= l`` off it, on a grid."""
    grid = np.atleast_1d(np.asarray(grid, dtype=complex))
    inside = np.asarray(support(grid), dtype=bool)
    if not np.any(inside):
        raise ValueError("grid does not meet the support")
    g = 2.0 * np.asarray(u(grid)) + np.asarray(v(grid))
    l_hat = float(np.mean(g[inside]))
    dev = float(np.max(np.abs(g[inside] - l_hat)))
    viol = float(max(0.0, l_hat - np.min(g[~inside]))) if np.any(~inside) else 0.0
    return EquilibriumCheck(l_hat, dev, viol)


@dataclass(frozen=True)
class QuadraticFit:
    a: float
    b: float
    c: float
    b_free: bool
    c_relation: float
    circle_residual: float
    violation: float

    def potential(self):
        return Potential.quadratic(self.a, self.b, self.c)


def refute_quadratic_for_nu(circle_points=512, c=1.0):
    """Fit a quadratic V making ``2 U^nu + V`` constant on the unit circle.

    The fit is determined only up to the family ``b = c/2``, ``l = c`` (the
    design matrix over (a, b, c, l) has rank 3; ``b_free`` reports this), so
    c is pinned and (a, b, l) solved by least squares.  The returned
    ``violation`` is ``l - (2 U^nu(0) + V(0))``: positive means the interior
    point breaks the inequality required off the support.
    """
    if circle_points < 8:
        raise ValueError("need at least 8 circle points")
    t = TWO_PI * np.arange(circle_points) / circle_points
    x, y = np.cos(t), np.sin(t)
    rhs = -2.0 * potential_nu(x + 1j * y)
    # V = a (x^2 - y^2) + b (-2 x y) + c (x^2 + y^2 + x y); unknown constant l
    cols = np.column_stack([x * x - y * y, -2.0 * x * y, x * x + y * y + x * y, -np.ones_like(x)])
    sv = np.linalg.svd(cols, compute_uv=False)
    rank = int(np.sum(sv > sv[0] * 1e-10))
    if rank < 3:
        raise np.linalg.LinAlgError(f"degenerate circle fit (rank {rank})")
    b_free = rank == 3
    reduced = cols[:, [0, 1, 3]]
    sol, *_ = np.linalg.lstsq(reduced, rhs - c * cols[:, 2], rcond=None)
    a, b, l = (float(s) for s in sol)
    vq = Potential.quadratic(a, b, c)
    on_circle = 2.0 * potential_nu(x + 1j * y) + vq(x + 1j * y)
    resid = float(np.max(np.abs(on_circle - l)))
    centre = 2.0 * potential_nu(0.0) + float(vq(0.0))
    return QuadraticFit(a, b, c, b_free, c - 2.0 * b, resid, l - centre)
