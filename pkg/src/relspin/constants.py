"""Numerical tolerances shared by every module and by the acceptance suite."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    EPS_EIG: float = 1e-10  # eigen-residuals, PSD floor, PPT threshold
    EPS_HERM: float = 1e-12  # Hermiticity / unitarity / Lorentz-invariance checks
    EPS_ORACLE: float = 1e-9  # numeric vs closed-form agreement
    EPS_JACOBI: float = 1e-13  # off-diagonal Frobenius norm at convergence
    MAX_SWEEPS: int = 100
    EPS_NORM: float = 1e-12  # state normalisation, unit vectors
    EPS_MASS_SHELL: float = 1e-9
    EPS_ANGLE: float = 1e-9  # rotations below this angle are the identity
    EPS_RANK: float = 1e-12  # Schmidt weights counted as nonzero


TOL = Tolerances()
