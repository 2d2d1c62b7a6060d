"""Replicated experiments and the acceptance checks behind ``qginibre verify``.

Replica ``i`` of a run seeded with ``s`` uses ``RandomStream(s).child(i)``;
its matrix is drawn from ``.child(0)`` of that stream and its class sample
from ``.child(1)``, so results do not depend on scheduling.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import loggas, potential_theory as pt, spectral_stats as ss
from .eig import EigenSolverError, adjoint_spectrum, eigenvalues
from .loggas import Potential
from .matrix_model import EnsembleConfig, complex_adjoint, sample_ginibre_quaternion
from .quadrature import integrate
from .quaternion import complex_to_quat, conjugate_by_array, sample_unit_sphere
from .rng import RandomStream

log = logging.getLogger(__name__)

DEFAULT_SEED = 7


def replica_stream(seed, index):
    return RandomStream(seed).child(index)


def _one_spectrum(n, seed, index):
    rs = replica_stream(seed, index)
    x = sample_ginibre_quaternion(EnsembleConfig(n), rng=rs.child(0))
    return adjoint_spectrum(complex_adjoint(x))


def replicate_spectra(n, replicas, seed, jobs=1):
    """Spectra of ``replicas`` independent X(n), in replica order.

    Failed replicas appear as the exception instance in their slot.
    """
    def run(i):
        try:
            return _one_spectrum(n, seed, i)
        except (EigenSolverError, ValueError) as exc:
            log.error("replica %d failed: %s", i, exc)
            return exc

    if jobs <= 1:
        return [run(i) for i in range(replicas)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, range(replicas)))


def replicate_classes(spectra, seed):
    return [ss.sample_classes(sp, replica_stream(seed, i).child(1)) for i, sp in enumerate(spectra)]


# -- acceptance checks ---------------------------------------------------------

@dataclass
class Check:
    test_name: str
    group: str
    value: float
    tolerance: float
    passed: bool
    n: int = None
    replicas: int = None
    is_ks: bool = False
    runtime: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "test_name": self.test_name,
            "group": self.group,
            "n": self.n,
            "replicas": self.replicas,
            "ks": self.value if self.is_ks else None,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
            "runtime_s": self.runtime,
            "detail": self.detail,
        }

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.test_name}: value={self.value:.6g} tolerance={self.tolerance:.3g}"


def _le(name, group, value, tol, **kw):
    return Check(name, group, float(value), float(tol), bool(value <= tol), **kw)


class Context:
    """Lazily computed data shared by several checks."""

    def __init__(self, seed=DEFAULT_SEED, n=300, replicas=20, jobs=1):
        self.seed = seed
        self.n = n
        self.replicas = replicas
        self.jobs = jobs
        self._spectra = None
        self._classes = None
        self.spectra_seconds = 0.0

    @property
    def spectra(self):
        if self._spectra is None:
            t0 = time.perf_counter()
            out = replicate_spectra(self.n, self.replicas, self.seed, self.jobs)
            bad = [s for s in out if isinstance(s, Exception)]
            if bad:
                raise RuntimeError(f"{len(bad)} replica(s) failed: {bad[0]}")
            self._spectra = out
            self.spectra_seconds = time.perf_counter() - t0
        return self._spectra

    @property
    def classes(self):
        if self._classes is None:
            self._classes = replicate_classes(self.spectra, self.seed)
        return self._classes


def _off_circle_points(rng, count, rmax=3.0):
    r = rng.uniform(count) * (rmax - 0.02)
    r = np.where(r < 0.99, r, r + 0.02)
    return r * np.exp(2j * math.pi * rng.uniform(count))


def check_potentials(ctx):
    """Closed-form potentials against adaptive quadrature."""
    t0 = time.perf_counter()
    rng = RandomStream(ctx.seed).child(101)
    pts = _off_circle_points(rng, 100)
    radii = np.abs(_off_circle_points(rng, 100))
    circle = np.exp(2j * math.pi * (np.arange(20) + 0.5 * rng.uniform(20)) / 20)
    out = []

    disk = max(abs(pt.potential_uniform_disk(x) - pt.quad_potential_disk(x)) for x in pts)
    nu = max(abs(pt.potential_nu(x) - pt.quad_potential(pt.NU, x)) for x in pts)
    sin2 = max(abs(pt.sin2_log_integral(r) - pt.quad_sin2_log_integral(r)) for r in radii)
    sin2_parts = max(abs(pt.sin2_log_integral(r) - pt.sin2_log_integral_from_poisson(r)) for r in radii)
    pois = max(max(abs(a - b) for a, b in zip(pt.poisson_integrals(r), pt.quad_poisson_integrals(r)))
               for r in radii)
    for name, val in [("disk", disk), ("nu", nu), ("sin2_log", sin2),
                      ("sin2_log_by_parts", sin2_parts), ("poisson", pois)]:
        out.append(_le(f"potentials.{name}.off_circle", "potentials", val, 1e-8))

    disk_c = max(abs(pt.potential_uniform_disk(x) - pt.quad_potential_disk(x)) for x in circle)
    nu_c = max(abs(pt.potential_nu(x) - pt.quad_potential(pt.NU, x, tol=1e-6)) for x in circle)
    sin2_c = abs(pt.sin2_log_integral(1.0) - pt.quad_sin2_log_integral(1.0, tol=1e-6))
    for name, val in [("disk", disk_c), ("nu", nu_c), ("sin2_log", sin2_c)]:
        out.append(_le(f"potentials.{name}.on_circle", "potentials", val, 1e-5))
    elapsed = time.perf_counter() - t0
    out.append(_le("potentials.runtime_s", "potentials", elapsed, 10.0))
    return out


def check_equilibrium(ctx):
    t0 = time.perf_counter()
    rng = RandomStream(ctx.seed).child(102)
    inside = np.sqrt(rng.uniform(1000)) * np.exp(2j * math.pi * rng.uniform(1000))
    outside = (1.0 + 4.0 * rng.uniform(1000)) * np.exp(2j * math.pi * rng.uniform(1000))
    v = Potential.canonical()
    res = pt.equilibrium_check(pt.potential_uniform_disk, v, lambda z: np.abs(z) <= 1.0,
                               np.concatenate([inside, outside]))
    elapsed = time.perf_counter() - t0
    return [
        _le("equilibrium.on_support_dev", "equilibrium", res.on_support_dev, 1e-12),
        _le("equilibrium.constant_minus_1", "equilibrium", abs(res.l_hat - 1.0), 1e-12),
        _le("equilibrium.exterior_violation", "equilibrium", res.off_support_violation, 0.0),
        _le("equilibrium.runtime_s", "equilibrium", elapsed, 1.0),
    ]


def check_circular_law(ctx):
    spectra = ctx.spectra
    t0 = time.perf_counter()
    z = np.concatenate([s.all_eigs for s in spectra])
    kw = dict(n=ctx.n, replicas=ctx.replicas, is_ks=True)
    out = [
        _le("circular_law.radial_ks", "circular", ss.ks_statistic(np.abs(z), ss.disk_radial_cdf), 0.03, **kw),
        _le("circular_law.argument_ks", "circular", ss.ks_statistic(np.angle(z), ss.uniform_angle_cdf), 0.03, **kw),
    ]
    elapsed = time.perf_counter() - t0 + ctx.spectra_seconds
    for c in out:
        c.runtime = elapsed
    out.append(_le("circular_law.runtime_s", "circular", elapsed, 300.0, n=ctx.n, replicas=ctx.replicas))
    return out


def check_energy(ctx):
    v = Potential.canonical()
    energies = [loggas.empirical_energy(s, v) for s in ctx.spectra]
    worst = max(abs(e - 0.75) for e in energies)
    return [_le("energy.max_abs_dev_from_0.75", "energy", worst, 0.02, n=ctx.n,
                replicas=ctx.replicas, detail={"energies": energies})]


def check_quaternion_limit(ctx):
    cls = ctx.classes
    c = np.concatenate([x.classes for x in cls])
    kw = dict(n=ctx.n, replicas=ctx.replicas, is_ks=True)
    ms = [ss.class_weighted_measure(x) for x in cls]
    # pool with each replica's measure weighted equally
    mod = np.concatenate([m.modulus for m in ms])
    w = np.concatenate([m.weights for m in ms]) / len(ms)
    ball = ss.sample_uniform_ball4(RandomStream(ctx.seed).child(105), 200_000)
    ks_ball = ss.ks_two_sample(mod, np.sqrt(np.sum(ball ** 2, axis=1)), weights=w)
    return [
        _le("quaternion_limit.real_part_ks", "quaternion",
            ss.ks_statistic(c[:, 0], ss.semicircle_cdf), 0.03, **kw),
        _le("quaternion_limit.modulus_ks", "quaternion",
            ss.ks_statistic(np.sqrt(np.sum(c ** 2, axis=1)), ss.disk_radial_cdf), 0.03, **kw),
        _le("quaternion_limit.weighted_modulus_vs_ball_ks", "quaternion", ks_ball, 0.05, **kw),
    ]


def check_orbit(ctx, draws=100_000):
    z0 = 1 + 2j
    u = sample_unit_sphere(RandomStream(ctx.seed).child(106), size=draws)
    c = conjugate_by_array(u, complex_to_quat(np.full(draws, z0)))
    im = c[:, 1:]
    im_norm = np.sqrt(np.sum(im ** 2, axis=1))
    s = im / im_norm[:, None]
    cov = np.cov(s, rowvar=False, bias=True)
    return [
        _le("orbit.real_part_dev", "orbit", np.max(np.abs(c[:, 0] - 1.0)), 1e-12),
        _le("orbit.imag_norm_dev", "orbit", np.max(np.abs(im_norm - 2.0)), 1e-12),
        _le("orbit.direction_mean", "orbit", np.max(np.abs(s.mean(axis=0))), 0.01),
        _le("orbit.direction_cov_dev", "orbit", np.max(np.abs(cov - np.eye(3) / 3.0)), 0.01),
    ]


def check_refutation(ctx):
    fit = pt.refute_quadratic_for_nu(512)
    return [
        _le("refutation.a_minus_half", "refutation", abs(fit.a - 0.5), 1e-6),
        _le("refutation.c_minus_2b", "refutation", abs(fit.c_relation), 1e-6),
        _le("refutation.circle_residual", "refutation", fit.circle_residual, 1e-6),
        Check("refutation.interior_gap_positive", "refutation", fit.violation, 0.0,
              bool(fit.violation > 0 and fit.b_free),
              detail={"a": fit.a, "b": fit.b, "c": fit.c, "b_free": fit.b_free}),
    ]


def check_rewrite(ctx, configs=100, n=4):
    rng = RandomStream(ctx.seed).child(108)
    v = Potential.canonical()
    diffs = []
    for _ in range(configs):
        z = (2.0 * rng.uniform(n) - 1.0) + 1j * (0.05 + rng.uniform(n))
        diffs.append(loggas.log_density_unnorm(z, v) - loggas.ginibre_log_density_unnorm(z))
    return [_le("rewrite.constant_spread", "rewrite", max(diffs) - min(diffs), 1e-9, n=n)]


def _match(a, b):
    from scipy.optimize import linear_sum_assignment
    d = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(d)
    return float(d[r, c].max())


def check_solver(ctx):
    rng = RandomStream(ctx.seed).child(109)
    out = []
    worst = 0.0
    for size in (5, 20, 50, 200):
        g = rng.normal((size, size)) + 1j * rng.normal((size, size))
        q, _ = np.linalg.qr(g)
        d = rng.normal(size) + 1j * rng.normal(size)
        m = q @ np.diag(d) @ q.conj().T
        worst = max(worst, _match(eigenvalues(m), d) / np.linalg.norm(m, 2))
    out.append(_le("solver.known_spectrum_rel_err", "solver", worst, 1e-8))

    worst = 0.0
    for size in (5, 50, 200):
        x = sample_ginibre_quaternion(EnsembleConfig(size), rng=rng.child(size))
        worst = max(worst, adjoint_spectrum(complex_adjoint(x)).pairing_residual)
    out.append(_le("solver.adjoint_pairing_residual", "solver", worst, 1e-8))

    tr = det = 0.0
    for size in (4, 10, 20):
        m = rng.normal((size, size)) + 1j * rng.normal((size, size))
        e = eigenvalues(m)
        nrm = np.linalg.norm(m, 2)
        tr = max(tr, abs(e.sum() - np.trace(m)) / (nrm * size))
        ref = np.linalg.det(m)
        det = max(det, abs(np.prod(e) - ref) / abs(ref))
    out.append(_le("solver.trace_identity", "solver", tr, 1e-9))
    out.append(_le("solver.determinant_identity", "solver", det, 1e-7))
    return out


def clamp(x):
    return np.clip(x, -1.0, 1.0)


def check_independence(ctx, trials=200, n=10_000):
    rng = RandomStream(ctx.seed).child(110)
    bound = 5.0 / math.sqrt(n)
    hits = 0
    for t in range(trials):
        tr = rng.child(t)
        xs = tr.normal(n)
        ys = 4.0 * tr.uniform(n) - 2.0
        hits += abs(ss.product_independence_stat(xs, ys, clamp, clamp)) <= bound
    return [Check("independence.fraction_within_5_over_sqrt_n", "independence", hits / trials, 0.99,
                  hits / trials >= 0.99, n=n, replicas=trials)]


def n1_log_density(z, v):
    """One-point gas: ``log P_1^V(z) = 2 log(2 Im z) - 2 V(z)`` up to a constant."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        return 2.0 * np.log(2.0 * z.imag) - 2.0 * v(z)


def n1_modulus_cdf(v, rmax=6.0, knots=301):
    """CDF of |z| for the one-point gas, by quadrature of its unnormalized density."""
    nodes, weights = np.polynomial.legendre.leggauss(64)
    phi = 0.5 * math.pi * (nodes + 1.0)
    wphi = 0.5 * math.pi * weights

    def radial(rs):
        z = rs[:, None] * np.exp(1j * phi)[None, :]
        return rs * (np.exp(n1_log_density(z, v)) @ wphi)

    grid = np.linspace(0.0, rmax, knots)
    pieces = [integrate(radial, a, b, tol=1e-13) for a, b in zip(grid[:-1], grid[1:])]
    cdf = np.concatenate([[0.0], np.cumsum(pieces)])
    total = cdf[-1]
    # cubic Hermite between knots, using the density as the slope
    spline = CubicHermiteSpline(grid, cdf / total, radial(grid) / total)
    return lambda r: np.clip(spline(np.clip(r, 0.0, rmax)), 0.0, 1.0)


def check_mcmc(ctx):
    v = Potential.canonical()
    rs = RandomStream(ctx.seed).child(111)
    one = loggas.mcmc_run(1, v, 200_000, rng=rs.child(1), burnin=20_000, thin=10)
    ks = ss.ks_statistic(np.abs(one.states[:, 0]), n1_modulus_cdf(v))
    gas = loggas.mcmc_run(16, v, 200_000, rng=rs.child(16), thin=100)
    return [
        _le("mcmc.n1_modulus_ks", "mcmc", ks, 0.05, n=1, is_ks=True,
            detail={"acceptance_rate": one.acceptance_rate}),
        _le("mcmc.n16_mean_energy_dev", "mcmc", abs(gas.mean_energy - 0.75), 0.1, n=16,
            detail={"mean_energy": gas.mean_energy, "acceptance_rate": gas.acceptance_rate}),
    ]


CHECKS = {
    "potentials": check_potentials,
    "equilibrium": check_equilibrium,
    "circular": check_circular_law,
    "energy": check_energy,
    "quaternion": check_quaternion_limit,
    "orbit": check_orbit,
    "refutation": check_refutation,
    "rewrite": check_rewrite,
    "solver": check_solver,
    "independence": check_independence,
    "mcmc": check_mcmc,
}


def run_checks(only=None, seed=DEFAULT_SEED, jobs=1, ctx=None, echo=None):
    groups = list(CHECKS) if not only else list(only)
    unknown = [g for g in groups if g not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check group(s): {', '.join(unknown)}")
    ctx = ctx or Context(seed=seed, jobs=jobs)
    results = []
    for g in groups:
        t0 = time.perf_counter()
        checks = CHECKS[g](ctx)
        dt = time.perf_counter() - t0
        for c in checks:
            c.runtime = c.runtime or dt
            if echo:
                echo(c.line())
        results.extend(checks)
    return results
