"""The two-dimensional log-gas with conjugate images.

A configuration is n points ``z_1..z_n`` in the open upper half-plane; the
full 2n-point configuration adds their conjugates.  With
``k(x, y) = -log|x - y| + (V(x) + V(y)) / 2`` the energy is

    K_n(z) = sum_{i != j <= 2n} k(z_i, z_j)

and the unnormalized log-density is
``-(K_n + sum V(z_i) + sum log|z_i - conj z_i|^-1) / 2`` (sums over 2n points).
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .rng import as_stream

log = logging.getLogger(__name__)

DEFAULT_BURNIN = 100_000
VALIDATE_EVERY = 10_000
COINCIDENT_TOL = 1e-14
COINCIDENT_SHIFT = 1e-12


class Potential:
    """A confining potential V on the complex plane.

    ``kind`` is ``"canonical"`` for ``|z|^2``, ``"quadratic"`` for
    ``V(x+iy) = x^2 (a+c) + y^2 (c-a) + xy (c-2b)``, or ``"custom"``.
    """

    def __init__(self, func, kind="custom", coeffs=None, delta=1.0, name=None):
        if delta <= 0:
            raise ValueError("growth margin delta must be positive")
        self._func = func
        self.kind = kind
        self.coeffs = None if coeffs is None else tuple(float(c) for c in coeffs)
        self.delta = float(delta)
        self.name = name or kind

    @classmethod
    def canonical(cls, delta=1.0):
        return cls(lambda z: np.abs(z) ** 2, kind="canonical", coeffs=(0.0, 0.5, 1.0),
                   delta=delta, name="canonical")

    @classmethod
    def quadratic(cls, a, b, c, delta=1.0):
        a, b, c = float(a), float(b), float(c)

        def v(z):
            x, y = np.real(z), np.imag(z)
            return x * x * (a + c) + y * y * (c - a) + x * y * (c - 2.0 * b)

        return cls(v, kind="quadratic", coeffs=(a, b, c), delta=delta,
                   name=f"quadratic({a:g},{b:g},{c:g})")

    @classmethod
    def parse(cls, text):
        """``"canonical"`` or ``"a,b,c"``."""
        text = text.strip()
        if text == "canonical":
            return cls.canonical()
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"potential must be 'canonical' or 'a,b,c', got {text!r}")
        return cls.quadratic(*(float(p) for p in parts))

    def __call__(self, z):
        out = self._func(np.asarray(z))
        return np.asarray(out, dtype=float) if np.ndim(out) else float(out)

    def __repr__(self):
        return f"Potential({self.name})"

    def spec(self):
        return "canonical" if self.kind == "canonical" else (
            ",".join(f"{c:.17g}" for c in self.coeffs) if self.coeffs else self.name)

    def h(self, z):
        """``V(z) - log(|z|^2 + 1)``; bounded below for admissible V."""
        return self(z) - np.log1p(np.abs(z) ** 2)

    def check_admissible(self, radii=None, angles=32, r0_max=1e3):
        """Grid check of positivity, conjugate invariance and log growth.

        Growth ``V >= (delta + 1) log(|z|^2 + 1)`` must hold on every grid
        radius from some ``r0 <= r0_max`` outward.  This documents the
        condition on a finite grid; it is not a proof.
        """
        radii = np.logspace(0, 6, 100) if radii is None else np.asarray(radii, dtype=float)
        theta = np.linspace(-np.pi, np.pi, angles, endpoint=False)
        z = radii[:, None] * np.exp(1j * theta)[None, :]
        vz = self(z)
        inner = np.linspace(0.0, 1.0, 11)[:, None] * np.exp(1j * theta)[None, :]
        nonneg = bool(np.all(vz >= 0) and np.all(self(inner) >= -1e-12))
        scale = np.maximum(1.0, np.abs(vz))
        sym = bool(np.all(np.abs(vz - self(z.conj())) <= 1e-12 * scale))
        ok_row = np.all(vz >= (self.delta + 1.0) * np.log1p(radii[:, None] ** 2), axis=1)
        bad = np.nonzero(~ok_row)[0]
        if bad.size == 0:
            r0 = float(radii[0])
        elif bad[-1] + 1 < radii.size:
            r0 = float(radii[bad[-1] + 1])
        else:
            r0 = math.inf
        growth = r0 <= r0_max
        return Admissibility(nonneg and sym and growth, nonneg, sym, growth, r0)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    nonnegative: bool
    conjugate_invariant: bool
    growth: bool
    r0: float

    def __bool__(self):
        return self.admissible


def kernel_k(x, y, v):
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    d = np.abs(x - y)
    with np.errstate(divide="ignore"):
        out = -np.log(d) + 0.5 * (v(x) + v(y))
    out = np.where(d == 0, np.inf, out)
    return out if out.ndim else float(out)


def kernel_k_trunc(x, y, v, l):
    if l < 0:
        raise ValueError("truncation level must be >= 0")
    out = np.minimum(kernel_k(x, y, v), l)
    return out if np.ndim(out) else float(out)


def _points(state):
    pts = state.points if isinstance(state, GasState) else state
    return np.atleast_1d(np.asarray(pts, dtype=complex))


def _full(z):
    return np.concatenate([z, z.conj()])


def energy_Kn(state, v):
    """``K_n`` over the full conjugate-closed 2n-point configuration.

    Returns ``inf`` when two of the 2n points coincide.
    """
    z = _full(_points(state))
    m = z.size
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, 1.0)
    if np.any(d == 0):
        return math.inf
    return float(-np.log(d).sum() + (m - 1) * np.sum(v(z)))


def energy_Kn_trunc(state, v, l):
    """``K_n^l``: the same double sum with k replaced by ``min(k, l)``."""
    z = _full(_points(state))
    kk = kernel_k_trunc(z[:, None], z[None, :], v, l)
    np.fill_diagonal(kk, 0.0)
    return float(kk.sum())


def log_density_unnorm(state, v):
    """Unnormalized log P_n^V; ``-inf`` if a point is real or points collide."""
    z = _points(state)
    gap = np.abs(z - z.conj())
    if np.any(gap == 0):
        return -math.inf
    k = energy_Kn(z, v)
    if not math.isfinite(k):
        return -math.inf
    full = _full(z)
    return float(-0.5 * (k + np.sum(v(full)) - 2.0 * np.sum(np.log(gap))))


def ginibre_log_density_unnorm(z):
    """Log of the eigenvalue density of the quaternionic Ginibre matrix, up to a constant.

    ``-2n sum |z_i|^2 + sum_{i<j} log(|z_i - z_j|^2 |z_i - conj z_j|^2)
    + sum log |z_i - conj z_i|^2``, coded from the product form.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = z.size
    total = -2.0 * n * np.sum(np.abs(z) ** 2)
    for i in range(n):
        for j in range(i + 1, n):
            total += math.log(abs(z[i] - z[j]) ** 2 * abs(z[i] - z[j].conjugate()) ** 2)
        total += math.log(abs(z[i] - z[i].conjugate()) ** 2)
    return float(total)


class GasState:
    """n points in the open upper half-plane with cached energy terms.

    The cache keeps ``pair = sum_{i<j} (log|z_i-z_j|^-1 + log|z_i-conj z_j|^-1)``,
    ``self_term = sum log|z_i - conj z_i|^-1`` and ``vsum = sum V(z_i)``; then
    ``K_n = 4 pair + 2 self_term + 2 (2n-1) vsum`` and the log-density is
    ``-2 (pair + self_term + n vsum)``.
    """

    def __init__(self, points, v):
        pts = np.array(np.atleast_1d(points), dtype=complex)
        if np.any(pts.imag <= 0):
            raise ValueError("gas points must lie in the open upper half-plane")
        self.points = pts
        self.v = v
        self.refresh()

    @property
    def n(self):
        return self.points.size

    def _terms(self):
        z = self.points
        d1 = np.abs(z[:, None] - z[None, :])
        d2 = np.abs(z[:, None] - z[None, :].conj())
        iu = np.triu_indices(z.size, 1)
        with np.errstate(divide="ignore"):
            pair = float(-np.log(d1[iu]).sum() - np.log(d2[iu]).sum())
        self_term = float(-np.log(2.0 * z.imag).sum())
        vsum = float(np.sum(self.v(z)))
        return pair, self_term, vsum

    def refresh(self):
        """Recompute the cache; return the largest change it caused."""
        new = self._terms()
        old = getattr(self, "_cache", None)
        self._cache = new
        if old is None:
            return 0.0
        return max(abs(a - b) if math.isfinite(a) or math.isfinite(b) else 0.0
                   for a, b in zip(old, new))

    @property
    def energy(self):
        pair, s, vsum = self._cache
        return 4.0 * pair + 2.0 * s + 2.0 * (2 * self.n - 1) * vsum

    @property
    def log_density(self):
        pair, s, vsum = self._cache
        return -2.0 * (pair + s + self.n * vsum)

    def _row(self, i, z):
        d1 = np.abs(z - self.points)
        d2 = np.abs(z - self.points.conj())
        d1[i] = 1.0
        d2[i] = 1.0
        with np.errstate(divide="ignore"):
            return float(-np.log(d1).sum() - np.log(d2).sum())

    def delta(self, i, z_new):
        """Change of (pair, self_term, vsum) when point i moves to z_new."""
        z_old = self.points[i]
        dp = self._row(i, z_new) - self._row(i, z_old)
        ds = -math.log(2.0 * z_new.imag) + math.log(2.0 * z_old.imag)
        dv = float(self.v(z_new)) - float(self.v(z_old))
        return dp, ds, dv

    def log_ratio(self, i, z_new):
        """log P(z with point i moved) - log P(z); ``-inf`` below the real axis."""
        if z_new.imag <= 0:
            return -math.inf
        dp, ds, dv = self.delta(i, z_new)
        out = -2.0 * (dp + ds + self.n * dv)
        return out if out == out else -math.inf

    def move(self, i, z_new, delta=None):
        dp, ds, dv = self.delta(i, z_new) if delta is None else delta
        pair, s, vsum = self._cache
        self._cache = (pair + dp, s + ds, vsum + dv)
        self.points[i] = z_new

    def copy(self):
        other = GasState.__new__(GasState)
        other.points = self.points.copy()
        other.v = self.v
        other._cache = self._cache
        return other


@dataclass
class MCMCResult:
    n: int
    steps: int
    burnin: int
    proposal_scale: float
    states: np.ndarray
    energies: np.ndarray
    acceptance_rate: float
    trace: dict = field(default_factory=dict)

    @property
    def mean_energy(self):
        return float(np.mean(self.energies))

    def summary(self, v):
        return {
            "n": self.n,
            "V": v.spec(),
            "steps": self.steps,
            "acceptance_rate": self.acceptance_rate,
            "mean_energy": self.mean_energy,
        }


def initial_points(n, rng):
    """n points uniform in the upper half of the unit disk."""
    rng = as_stream(rng)
    r = np.sqrt(rng.uniform(n))
    phi = np.pi * (0.05 + 0.9 * rng.uniform(n))
    return r * np.exp(1j * phi)


def mcmc_run(n, v, steps, proposal_scale=None, rng=None, burnin=DEFAULT_BURNIN,
             thin=1, init=None, record_trace=False, validate_every=VALIDATE_EVERY):
    """Metropolis chain on n upper-half-plane points with density P_n^V.

    Each step picks a point uniformly and proposes a complex Gaussian move of
    scale ``proposal_scale`` (default ``1/sqrt(n)``).  Moves with
    ``Im <= 0`` are rejected outright.  After ``burnin`` steps, every
    ``thin``-th state is recorded together with its energy ``K_n / (4 n^2)``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = as_stream(rng)
    scale = 1.0 / math.sqrt(n) if proposal_scale is None else float(proposal_scale)
    state = GasState(initial_points(n, rng) if init is None else init, v)
    if state.n != n:
        raise ValueError("initial configuration has the wrong size")
    total = burnin + steps
    nrec = steps // thin
    states = np.empty((nrec, n), dtype=complex)
    energies = np.empty(nrec)
    if record_trace:
        tr_idx = np.empty(steps, dtype=np.int64)
        tr_pt = np.empty(steps, dtype=complex)
        tr_acc = np.empty(steps, dtype=bool)
    accepted = 0
    block = 4096
    norm4 = 4.0 * n * n
    rec = 0
    for start in range(0, total, block):
        size = min(block, total - start)
        idx = np.minimum((rng.uniform(size) * n).astype(np.int64), n - 1)
        steps_z = scale * rng.normal((size, 2))
        logu = np.log(rng.uniform(size))
        for t in range(size):
            step = start + t
            i = int(idx[t])
            z_new = state.points[i] + complex(steps_z[t, 0], steps_z[t, 1])
            acc = False
            if z_new.imag > 0:
                if z_new == state.points[i]:
                    acc = True
                else:
                    d = state.delta(i, z_new)
                    lr = -2.0 * (d[0] + d[1] + n * d[2])
                    if lr >= 0 or logu[t] < lr:
                        state.move(i, z_new, d)
                        acc = True
            if step >= burnin:
                k = step - burnin
                accepted += acc
                if record_trace:
                    tr_idx[k] = i
                    tr_pt[k] = state.points[i]
                    tr_acc[k] = acc
                if (k + 1) % thin == 0 and rec < nrec:
                    states[rec] = state.points
                    energies[rec] = state.energy / norm4
                    rec += 1
            if validate_every and (step + 1) % validate_every == 0:
                before = state.log_density
                drift = state.refresh()
                if drift > 1e-6 * max(1.0, abs(before)):
                    raise RuntimeError(f"cached gas energy drifted by {drift:.3g} at step {step + 1}")
    trace = {}
    if record_trace:
        trace = {"point_index": tr_idx, "point": tr_pt, "accepted": tr_acc}
    return MCMCResult(n, steps, burnin, scale, states, energies, accepted / steps, trace)


def separate_coincident(z):
    """Nudge coincident points (and real ones, which meet their conjugate) apart."""
    z = np.array(np.atleast_1d(z), dtype=complex)
    moved = 0
    real = np.abs(z.imag) <= COINCIDENT_TOL
    if np.any(real):
        z[real] = z[real].real + 1j * COINCIDENT_SHIFT
        moved += int(real.sum())
    order = np.lexsort((z.imag, z.real))
    for a, b in zip(order[:-1], order[1:]):
        if abs(z[a] - z[b]) <= COINCIDENT_TOL:
            z[b] += COINCIDENT_SHIFT * (1 + 1j)
            moved += 1
    if moved:
        log.warning("perturbed %d coincident eigenvalue(s) by %g", moved, COINCIDENT_SHIFT)
    return z


def empirical_energy(spec, v):
    """``K_n / (4 n^2)`` on the upper representatives of a paired spectrum."""
    z = separate_coincident(spec.upper)
    return energy_Kn(z, v) / (4.0 * z.size ** 2)
