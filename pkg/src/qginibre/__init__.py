"""Quaternionic Ginibre matrices, their right spectra, and the associated log-gas."""

from .eig import (EigenSolverError, PairingError, SpectrumSample, adjoint_spectrum,
                  eigenvalues, hessenberg, pair_spectrum)
from .loggas import GasState, MCMCResult, Potential, mcmc_run
from .matrix_model import (ComplexAdjoint, EnsembleConfig, QuaternionMatrix, complex_adjoint,
                           sample_ginibre_quaternion)
from .quaternion import Quaternion
from .rng import RandomStream

__all__ = [
    "ComplexAdjoint", "EigenSolverError", "EnsembleConfig", "GasState", "MCMCResult",
    "PairingError", "Potential", "Quaternion", "QuaternionMatrix", "RandomStream",
    "SpectrumSample", "adjoint_spectrum", "complex_adjoint", "eigenvalues", "hessenberg",
    "mcmc_run", "pair_spectrum", "sample_ginibre_quaternion",
]
__version__ = "0.1.0"
