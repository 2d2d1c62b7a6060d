"""Right eigenvalues of a quaternionic matrix through its complex adjoint."""

import numpy as np

from qginibre import EnsembleConfig, adjoint_spectrum, complex_adjoint, sample_ginibre_quaternion
from qginibre.eig import eigenvalues
from qginibre.matrix_model import QuaternionMatrix, lift_vector, right_eigen_residuals

# A = [j] has adjoint [[0, 1], [-1, 0]] and right eigenvalues +-i.
a = QuaternionMatrix(np.array([[[0.0, 0.0, 1.0, 0.0]]]))
print("adjoint of [j]:\n", complex_adjoint(a).matrix.real)
print("eigenvalues:", eigenvalues(complex_adjoint(a).matrix))
print("residuals for X = 1 + k:", right_eigen_residuals(a, 1j, np.array([[1.0, 0, 0, 1.0]])))

# For a Gaussian X(n) the 2n eigenvalues come in conjugate pairs.
x = sample_ginibre_quaternion(EnsembleConfig(6, seed=3))
adj = complex_adjoint(x)
print("\nsymplectic defect |J M J^-1 - conj M|:", adj.symplectic_defect())
sp = adjoint_spectrum(adj)
print("upper representatives:", np.round(sp.upper, 5))
print("pairing residual:", sp.pairing_residual)

# Each adjoint eigenvector lifts to a quaternion vector X with A X = X lambda.
vals, vecs = np.linalg.eig(adj.matrix)
worst = max(right_eigen_residuals(x, lam, lift_vector(v))[0] for lam, v in zip(vals, vecs.T))
print("max residual of A X = X lambda over lifted eigenvectors:", worst)
