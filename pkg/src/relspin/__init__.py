"""Wigner rotations and the redistribution of spin/momentum entanglement under Lorentz boosts."""

from . import bellcorr, entanglement, kinematics, linalg, qstate, relboost
from .constants import TOL, Tolerances
from .errors import (
    ConfigError,
    DimensionMismatch,
    InvalidAlpha,
    InvalidPartition,
    LabelMismatch,
    NotConverged,
    NotHermitian,
    OffMassShell,
    QuadratureTooCoarse,
    RelspinError,
    SuperluminalVelocity,
)

__version__ = "0.1.0"

__all__ = [
    "bellcorr",
    "entanglement",
    "kinematics",
    "linalg",
    "qstate",
    "relboost",
    "TOL",
    "Tolerances",
    "ConfigError",
    "DimensionMismatch",
    "InvalidAlpha",
    "InvalidPartition",
    "LabelMismatch",
    "NotConverged",
    "NotHermitian",
    "OffMassShell",
    "QuadratureTooCoarse",
    "RelspinError",
    "SuperluminalVelocity",
]
