"""The spectrum of X(n) fills the unit disk uniformly as n grows."""

import numpy as np

from qginibre import experiments
from qginibre import spectral_stats as ss
from qginibre.loggas import Potential, empirical_energy

for n in (25, 100, 200):
    spectra = experiments.replicate_spectra(n, replicas=4, seed=7)
    z = np.concatenate([s.all_eigs for s in spectra])
    ks_r = ss.ks_statistic(np.abs(z), ss.disk_radial_cdf)
    ks_a = ss.ks_statistic(np.angle(z), ss.uniform_angle_cdf)
    energy = np.mean([empirical_energy(s, Potential.canonical()) for s in spectra])
    print(f"n={n:4d}  KS(|z|, r^2)={ks_r:.4f}  KS(arg z, uniform)={ks_a:.4f}  energy={energy:.4f}")

print("energy of the uniform disk with V=|z|^2: 1/4 + 1/2 = 0.75")

# Radial histogram at the largest n against the density 2r.
r = np.abs(z)
hist, edges = np.histogram(r, bins=10, range=(0, 1.1), density=True)
for lo, hi, h in zip(edges[:-1], edges[1:], hist):
    mid = 0.5 * (lo + hi)
    print(f"r in [{lo:.2f},{hi:.2f})  {h:6.3f}  vs  {2 * mid if mid <= 1 else 0.0:6.3f}")
