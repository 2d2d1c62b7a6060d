"""Metropolis sampling of the conjugate-symmetric log-gas."""

import numpy as np

from qginibre import mcmc_run
from qginibre.experiments import n1_modulus_cdf
from qginibre.loggas import Potential
from qginibre.rng import RandomStream
from qginibre.spectral_stats import ks_statistic

v = Potential.canonical()
print("admissibility:", v.check_admissible())

# One point: density prop. to Im(z)^2 exp(-2|z|^2) on the upper half-plane.
res = mcmc_run(1, v, 100_000, rng=RandomStream(1), burnin=10_000, thin=10)
ks = ks_statistic(np.abs(res.states[:, 0]), n1_modulus_cdf(v))
print(f"n=1: acceptance={res.acceptance_rate:.3f}  KS vs quadrature CDF={ks:.4f}")

# A small gas: the mean energy sits somewhat below its large-n limit 3/4.
for n in (4, 8, 16):
    res = mcmc_run(n, v, 60_000, rng=RandomStream(n), burnin=20_000, thin=50)
    print(f"n={n:2d}: acceptance={res.acceptance_rate:.3f}  mean energy={res.mean_energy:.4f}")

pts = res.states[-1]
print("last configuration (upper points):", np.round(np.sort_complex(pts), 3))
