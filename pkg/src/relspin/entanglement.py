"""Entropies, two-qubit entanglement measures, partition entanglement and analytic results.

Linear entropy is left unnormalised (range ``[0, 1 - 1/d]``).  Logarithms
default to base 2; pass ``base=np.e`` or ``base=d`` for other units.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import cos, log, sin, sqrt

import numpy as np

from . import linalg
from .constants import TOL
from .errors import DimensionMismatch, InvalidAlpha, InvalidPartition
from .kinematics import SIGMA_Y
from .qstate import Partition, PureState, as_density_array

_YY = np.kron(SIGMA_Y, SIGMA_Y)


def _clipped_spectrum(rho) -> np.ndarray:
    w = linalg.eigvalsh(as_density_array(rho))
    return np.where((w < 0.0) & (w >= -TOL.EPS_EIG), 0.0, w)


def _log(x, base):
    return np.log(x) / log(base)


# --------------------------------------------------------------------------- entropies

def linear_entropy(rho) -> float:
    """``1 - Tr(rho^2)``."""
    m = as_density_array(rho)
    return float(1.0 - np.vdot(m, m).real)


def shannon_entropy(probs, base: float = 2.0) -> float:
    p = np.asarray(probs, dtype=float)
    p = p[p > 0.0]
    return float(-(p * _log(p, base)).sum())


def binary_entropy(p: float, base: float = 2.0) -> float:
    return shannon_entropy([p, 1.0 - p], base)


def von_neumann_entropy(rho, base: float = 2.0) -> float:
    """``-sum p_i log p_i`` over the spectrum, ``0 log 0 = 0``."""
    return max(shannon_entropy(_clipped_spectrum(rho), base), 0.0)


def renyi_entropy(rho, alpha: float, base: float = 2.0) -> float:
    """``log(Tr rho^alpha) / (1 - alpha)`` for ``alpha >= 0``, ``alpha != 1``."""
    if not np.isfinite(alpha) or alpha < 0.0 or alpha == 1.0:
        raise InvalidAlpha(f"alpha = {alpha!r}; need alpha >= 0 and alpha != 1")
    w = _clipped_spectrum(rho)
    w = w[w > TOL.EPS_RANK]
    tr = float(np.sum(w**alpha))
    return float(_log(tr, base) / (1.0 - alpha))


# --------------------------------------------------------------------------- partitions

@dataclass(frozen=True, eq=False)
class EntanglementReport:
    partition: Partition
    reductions: tuple[np.ndarray, ...]
    per_block_linear_entropy: tuple[float, ...]
    total_E: float

    @cached_property
    def per_block_von_neumann(self) -> tuple[float, ...]:
        return tuple(von_neumann_entropy(r) for r in self.reductions)


def partition_entanglement(state: PureState, partition: Partition) -> EntanglementReport:
    """Sum of the linear entropies of the reductions onto each block."""
    partition.check(state.n_factors)
    reds = tuple(state.reduced(b) for b in partition.blocks)
    lin = tuple(float(1.0 - np.vdot(r, r).real) for r in reds)
    return EntanglementReport(partition, reds, lin, float(sum(lin)))


def genuine_multipartite_entangled(state: PureState) -> bool:
    """True iff every bipartition's reduction is mixed (linear entropy above ``TOL.EPS_EIG``)."""
    n = state.n_factors
    if n < 3:
        raise InvalidPartition(f"need at least 3 factors, got {n}")
    for part in Partition.all_bipartitions(n):
        r = state.reduced(part.blocks[0])
        if 1.0 - np.vdot(r, r).real <= TOL.EPS_EIG:
            return False
    return True


# --------------------------------------------------------------------------- two-qubit measures

def _two_qubit(rho) -> np.ndarray:
    m = as_density_array(rho)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"two-qubit operator required, got shape {m.shape}")
    return m


def spin_flip(rho) -> np.ndarray:
    """``(sy x sy) rho* (sy x sy)`` with conjugation in the computational basis."""
    m = _two_qubit(rho)
    return _YY @ m.conj() @ _YY


# eigenvalues of rho below this are round-off; dropping them keeps sqrt(noise) out of C
_SPECTRUM_FLOOR = 1e-14


def concurrence(rho) -> float:
    """``max(0, l1 - l2 - l3 - l4)`` with ``l_i`` the descending square roots of the spectrum of ``rho rho~``.

    The ``l_i`` are obtained as the singular values of ``tau = W^T (sy x sy) W``
    where the columns of ``W`` are the eigenvectors of ``rho`` scaled by the
    square roots of their weights; ``tau^dagger tau`` is similar to ``rho rho~``.
    """
    m = _two_qubit(rho)
    w, v = linalg.hermitian_eigen(m)
    keep = w > _SPECTRUM_FLOOR * max(1.0, float(w[-1]))
    wv = v[:, keep] * np.sqrt(w[keep])
    tau = wv.T @ _YY @ wv
    lam = np.zeros(4)
    sv = linalg.singular_values(tau)
    lam[: sv.size] = sv
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def entanglement_of_formation(rho) -> float:
    c = min(concurrence(rho), 1.0)
    return binary_entropy(0.5 * (1.0 + sqrt(max(0.0, 1.0 - c * c))))


def is_ppt(rho, dims=(2, 2), subsystem="B") -> tuple[bool, float]:
    """Whether the partial transpose is positive, and its smallest eigenvalue."""
    m = as_density_array(rho)
    if len(dims) != 2:
        raise DimensionMismatch(f"bipartite dims required, got {dims}")
    pt = linalg.partial_transpose(m, dims, subsystem)
    lo = float(linalg.eigvalsh(pt)[0])
    return lo >= -TOL.EPS_EIG, lo


# --------------------------------------------------------------------------- analytic results

@dataclass(frozen=True)
class BellClosedForms:
    E_4q_unboosted: float
    E_4q_boosted: float
    E_4q_diff: float
    E_spinmom_boosted: float
    E_ab: float


@dataclass(frozen=True)
class TripletClosedForms:
    E_diff_4q: float
    E_spinmom_boosted: float
    E_ab: float


def closed_forms_bell(alpha: float, beta: float, delta: float) -> BellClosedForms:
    """Partition entanglement of the Bell-type family as explicit trigonometric expressions.

    ``E_ab`` uses the constant 16, the value that makes it vanish for product
    states and equal 3/2 at ``alpha = beta = pi/4``.
    """
    c4a, c4b = cos(4 * alpha), cos(4 * beta)
    s2a2 = sin(2 * alpha) ** 2
    c2b2 = cos(2 * beta) ** 2
    sd2 = sin(delta) ** 2
    unboosted = 0.5 * (2.0 - c4a - c4b)
    boosted = (
        18.0 - 10.0 * c4a - 6.0 * c4b - 2.0 * c4a * c4b - 8.0 * cos(2 * delta) * s2a2 * c2b2
    ) / 16.0
    diff = sd2 * s2a2 * c2b2
    s2b = sin(2 * beta)
    spinmom = 0.5 * sd2 * s2a2 * (1.0 - s2b) * (3.0 + cos(2 * delta) + 2.0 * sd2 * s2b)
    e_ab = (16.0 - (3.0 + c4a) * (3.0 + c4b)) / 8.0
    return BellClosedForms(unboosted, boosted, diff, spinmom, e_ab)


def closed_forms_triplet(alpha: float, theta: float, phi: float, delta: float) -> TripletClosedForms:
    """Partition-entanglement changes of the triplet-type family, coefficients as derived analytically."""
    sd2 = sin(delta) ** 2
    s2a2 = sin(2 * alpha) ** 2
    proj2 = (cos(theta) + cos(phi) * sin(theta)) ** 2
    c2t, s2t, st = cos(2 * theta), sin(2 * theta), sin(theta)
    diff = -0.25 * sd2 * s2a2 * proj2 * (
        -5.0 + c2t + 2.0 * st**2 * cos(2 * phi) + 4.0 * s2t * cos(phi)
    )
    f1 = 2.0 * cos(2 * delta) * (3.0 + c2t) - 2.0 * c2t
    f2 = 8.0 * sd2 * (cos(2 * phi) * st**2 + 2.0 * cos(phi) * s2t)
    spinmom = (
        sd2 * s2a2 * proj2 * (26.0 + f1 - f2) / 32.0
        + 1.0
        - cos(alpha) ** 4
        - sin(alpha) ** 4
        - s2a2 * (10.0 + f1 - f2) ** 2 / 512.0
    )
    c4a = cos(4 * alpha)
    e_ab = (
        203.0
        - 103.0 * c4a
        + (3.0 + c4a)
        * (
            -12.0 * c2t
            - 13.0 * cos(4 * theta)
            + 16.0 * (3.0 + 5.0 * c2t) * cos(2 * phi) * st**2
            + 8.0 * cos(4 * phi) * st**4
            - 256.0 * cos(theta) * cos(phi) * st**3 * sin(phi) ** 2
        )
    ) / 256.0
    return TripletClosedForms(diff, spinmom, e_ab)
