"""Quaternion arithmetic, similarity classes and their canonical complex representative."""

import numpy as np

from qginibre import quaternion as qt
from qginibre.quaternion import I, J, K, Quaternion
from qginibre.rng import RandomStream

# The multiplication table is non-commutative.
print("i*j =", I * J, "  j*i =", J * I)

q = Quaternion(1.0, 2.0, -2.0, 1.0)
print("q =", q, " |q| =", qt.norm(q), " q q* =", q * q.conj())

# Every quaternion is similar to a complex number Re q + |Im q| i.
print("canonical form of q:", qt.canonical_form(q))

# Conjugating by unit quaternions moves q around a 2-sphere at fixed real part.
rs = RandomStream(1)
u = qt.sample_unit_sphere(rs, size=5)
orbit = qt.conjugate_by_array(u, np.tile(q.to_array(), (5, 1)))
print("orbit samples (w, x, y, z):")
print(np.round(orbit, 4))
print("canonical forms along the orbit:", np.round(qt.canonical_form_array(orbit), 12))

# Real part of a uniform unit quaternion follows the semicircle law on [-1, 1].
w = qt.sample_unit_sphere(rs, size=100_000)[:, 0]
hist, edges = np.histogram(w, bins=8, range=(-1, 1), density=True)
mid = 0.5 * (edges[1:] + edges[:-1])
print("\n  x    empirical  (2/pi) sqrt(1-x^2)")
for x, h in zip(mid, hist):
    print(f"{x:5.2f}  {h:8.4f}   {2 / np.pi * np.sqrt(1 - x * x):8.4f}")
