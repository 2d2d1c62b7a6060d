"""Logarithmic potentials: closed forms against quadrature, and a failed equilibrium."""

import numpy as np

from qginibre import potential_theory as pt
from qginibre.loggas import Potential

xs = [0.0, 0.5, 0.5j, 1.0, 1j, 2.0, 1.5 - 1.5j]
print("   x            U_disk  (quad)          U_nu   (quad)")
for x in xs:
    tol = 1e-6 if abs(abs(x) - 1) < 1e-14 else 1e-10
    print(f"{complex(x)!s:12} {pt.potential_uniform_disk(x):8.5f} ({pt.quad_potential_disk(x):8.5f})"
          f"   {pt.potential_nu(x):8.5f} ({pt.quad_potential(pt.NU, x, tol=tol):8.5f})")

# Disk: 2U + |z|^2 is 1 inside and at least 1 outside, so the disk law is the equilibrium.
grid = np.linspace(0, 3, 13)
print("\n2U_disk(r) + r^2:", np.round(2 * pt.potential_uniform_disk(grid) + grid ** 2, 6))

# The law 2 sin^2(theta) dtheta/2pi on the circle: the only quadratic V that makes
# 2U + V constant on the circle is |z|^2 + (x^2 - y^2)/2 (up to scale), and then the
# origin violates the required inequality.
fit = pt.refute_quadratic_for_nu()
print(f"\nfit: a={fit.a:.6f}  b={fit.b:.6f}  c={fit.c}  circle residual={fit.circle_residual:.2e}")
v = fit.potential()
for r in (0.0, 0.5, 0.9, 1.0, 1.5):
    print(f"  2U+V at r={r}: {2 * pt.potential_nu(r) + v(r):.6f}  (constant on circle: {fit.c})")

# Weighted energy of a disk sample approaches 3/4.
rng = np.random.default_rng(0)
n = 4000
z = np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
print("\nweighted energy of", n, "disk points:", pt.weighted_energy(pt.DiscreteMeasure.uniform(z), Potential.canonical()))
