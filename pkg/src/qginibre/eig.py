"""Dense eigenvalues of general complex matrices.

Balancing, Householder reduction to upper Hessenberg form, then implicit
single-shift QR sweeps with a Wilkinson shift from the trailing 2x2 block.
The kernels are compiled with numba.
"""

import logging
from dataclasses import dataclass

import numba
import numpy as np

log = logging.getLogger(__name__)

EPS = 2.0 ** -52
MAX_ITS_PER_EIG = 40
EXCEPTIONAL_EVERY = 10


class EigenSolverError(RuntimeError):
    def __init__(self, deflated, size):
        super().__init__(f"QR iteration failed to converge after deflating {deflated} of {size} eigenvalues")
        self.deflated = deflated
        self.size = size


class PairingError(ValueError):
    pass


@numba.njit(cache=True, nogil=True)
def _balance(a):
    n = a.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            c = 0.0
            r = 0.0
            for j in range(n):
                if j != i:
                    c += abs(a[j, i])
                    r += abs(a[i, j])
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                g = 1.0 / f
                for j in range(n):
                    a[i, j] *= g
                for j in range(n):
                    a[j, i] *= f


@numba.njit(cache=True, nogil=True)
def _hessenberg(h):
    n = h.shape[0]
    v = np.empty(n, dtype=np.complex128)
    w = np.empty(n, dtype=np.complex128)
    for k in range(n - 2):
        m = n - k - 1
        xnorm = 0.0
        for i in range(m):
            xnorm += h[k + 1 + i, k].real ** 2 + h[k + 1 + i, k].imag ** 2
        xnorm = np.sqrt(xnorm)
        if xnorm == 0.0:
            continue
        x0 = h[k + 1, k]
        phase = x0 / abs(x0) if x0 != 0 else 1.0 + 0.0j
        alpha = -phase * xnorm
        for i in range(m):
            v[i] = h[k + 1 + i, k]
        v[0] -= alpha
        vnorm = 0.0
        for i in range(m):
            vnorm += v[i].real ** 2 + v[i].imag ** 2
        if vnorm == 0.0:
            continue
        scale = 2.0 / vnorm
        # H <- (I - 2vv*/v*v) H on rows k+1..n-1
        w[k:] = 0.0
        for i in range(m):
            vi = v[i].conjugate()
            for j in range(k, n):
                w[j] += vi * h[k + 1 + i, j]
        for i in range(m):
            vi = scale * v[i]
            for j in range(k, n):
                h[k + 1 + i, j] -= vi * w[j]
        # H <- H (I - 2vv*/v*v) on columns k+1..n-1
        for i in range(n):
            s = 0.0j
            for jj in range(m):
                s += h[i, k + 1 + jj] * v[jj]
            s *= scale
            for jj in range(m):
                h[i, k + 1 + jj] -= s * v[jj].conjugate()
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0


@numba.njit(cache=True, nogil=True)
def _wilkinson(a, b, c, d):
    p = 0.5 * (a - d)
    bc = b * c
    disc = np.sqrt(p * p + bc)
    den1 = p + disc
    den2 = p - disc
    den = den1 if abs(den1) >= abs(den2) else den2
    if den == 0:
        return d
    return d - bc / den


@numba.njit(cache=True, nogil=True)
def _hqr(h, eigs, eps, max_its, exc_every):
    """Eigenvalues of an upper Hessenberg matrix, overwritten in place.

    Returns the number of eigenvalues deflated; a value below n means the
    iteration budget was exhausted.
    """
    n = h.shape[0]
    hi = n - 1
    its = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            tst = abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])
            if abs(h[lo, lo - 1]) <= eps * tst:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if its >= max_its:
            return n - 1 - hi
        its += 1
        if its % exc_every == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1].real)
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        x = h[lo, lo] - mu
        y = h[lo + 1, lo]
        for k in range(lo, hi):
            if k > lo:
                x = h[k, k - 1]
                y = h[k + 1, k - 1]
            ax = abs(x)
            ay = abs(y)
            nrm = np.hypot(ax, ay)
            if nrm == 0.0:
                continue
            if ax == 0.0:
                c = 0.0
                s = y.conjugate() / ay
            else:
                c = ax / nrm
                s = (x / ax) * y.conjugate() / nrm
            sc = s.conjugate()
            j0 = k - 1 if k > lo else lo
            for j in range(j0, hi + 1):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c * t1 + s * t2
                h[k + 1, j] = -sc * t1 + c * t2
            i1 = k + 2 if k + 2 < hi else hi
            for i in range(lo, i1 + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = c * t1 + sc * t2
                h[i, k + 1] = -s * t1 + c * t2
            if k > lo:
                h[k + 1, k - 1] = 0.0
    return n


def hessenberg(m):
    """Upper Hessenberg matrix unitarily similar to ``m``."""
    h = np.array(m, dtype=np.complex128, order="C")
    _hessenberg(h)
    return h


def eigenvalues(m, balance=True):
    """All eigenvalues of a square complex matrix.

    Raises :class:`EigenSolverError` when some eigenvalue needs more than
    40 QR sweeps.
    """
    a = np.array(m, dtype=np.complex128, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    if n == 0:
        return np.empty(0, dtype=complex)
    if balance:
        _balance(a)
    _hessenberg(a)
    eigs = np.zeros(n, dtype=np.complex128)
    done = _hqr(a, eigs, EPS, MAX_ITS_PER_EIG, EXCEPTIONAL_EVERY)
    if done < n:
        raise EigenSolverError(done, n)
    return eigs


@dataclass(frozen=True)
class SpectrumSample:
    """Paired spectrum: ``all_eigs = upper ++ conj(upper)``."""

    n: int
    all_eigs: np.ndarray
    upper: np.ndarray
    pairing_residual: float


def pair_spectrum(eigs, tol=1e-6):
    """Match each eigenvalue with the conjugate of another one.

    Pairs are formed greedily by increasing distance ``|e_i - conj(e_j)|``.
    The representative of a pair is the mean of ``e_i`` and ``conj(e_j)``
    reflected into the closed upper half-plane; when its imaginary part is
    within the pair's own mismatch it is set to exactly zero.  Raises
    :class:`PairingError` if the worst mismatch exceeds ``tol * scale``.
    """
    eigs = np.asarray(eigs, dtype=complex).ravel()
    m = eigs.size
    if m % 2:
        raise PairingError(f"need an even number of eigenvalues, got {m}")
    n = m // 2
    scale = max(1.0, float(np.max(np.abs(eigs)))) if m else 1.0
    d = np.abs(eigs[:, None] - eigs[None, :].conj())
    np.fill_diagonal(d, np.inf)
    iu = np.triu_indices(m, 1)
    order = np.argsort(d[iu], kind="stable")
    used = np.zeros(m, dtype=bool)
    upper = np.empty(n, dtype=complex)
    residual = 0.0
    found = 0
    for idx in order:
        i, j = iu[0][idx], iu[1][idx]
        if used[i] or used[j]:
            continue
        used[i] = used[j] = True
        dist = d[i, j]
        residual = max(residual, dist)
        rep = 0.5 * (eigs[i] + eigs[j].conjugate())
        if abs(rep.imag) <= max(dist, 64 * EPS * scale):
            rep = complex(rep.real, 0.0)
        elif rep.imag < 0:
            rep = rep.conjugate()
        upper[found] = rep
        found += 1
        if found == n:
            break
    if residual > tol * scale:
        raise PairingError(f"pairing residual {residual:.3g} exceeds {tol:g} * {scale:.3g}")
    upper = upper[np.lexsort((upper.imag, upper.real))]
    return SpectrumSample(n, np.concatenate([upper, upper.conj()]), upper, float(residual))


def adjoint_spectrum(adjoint, balance=True):
    """Eigenvalues of a complex adjoint, paired into a SpectrumSample."""
    m = getattr(adjoint, "matrix", adjoint)
    return pair_spectrum(eigenvalues(m, balance=balance))
