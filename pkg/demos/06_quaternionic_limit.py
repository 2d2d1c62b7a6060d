"""Spreading each eigenvalue over its similarity class gives a law on the unit ball of H."""

import numpy as np

from qginibre import experiments
from qginibre import spectral_stats as ss
from qginibre.rng import RandomStream

n, replicas, seed = 150, 4, 7
spectra = experiments.replicate_spectra(n, replicas, seed)
classes = experiments.replicate_classes(spectra, seed)
c = np.concatenate([cs.classes for cs in classes])

print("max canonical defect:", max(cs.canonical_defect() for cs in classes))
print("KS(Re c, semicircle) =", round(ss.ks_statistic(c[:, 0], ss.semicircle_cdf), 4))
print("KS(|c|, r^2)         =", round(ss.ks_statistic(np.linalg.norm(c, axis=1), ss.disk_radial_cdf), 4))

# Weighting each class by its area 4 pi r^2 gives the uniform law on the ball.
ms = [ss.class_weighted_measure(cs) for cs in classes]
mod = np.concatenate([m.modulus for m in ms])
w = np.concatenate([m.weights for m in ms]) / len(ms)
ball = ss.sample_uniform_ball4(RandomStream(1), 100_000)
print("KS(weighted |c|, ball) =", round(ss.ks_two_sample(mod, np.linalg.norm(ball, axis=1), w), 4))
print("KS(weighted |c|, r^4)  =", round(ss.ks_statistic(mod, ss.ball4_radial_cdf, w), 4))
