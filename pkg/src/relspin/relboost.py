"""Lorentz boosts acting on one- and two-particle spin/momentum states.

Two-particle geometry: particle momenta ``p+`` / ``p-`` point along ``+z`` /
``-z`` with speed ``v``; the observer moves along ``x`` with speed ``w``.  The
Wigner rotation of a ``p+`` particle is a rotation by ``+delta`` about
:data:`WIGNER_AXIS` and that of a ``p-`` particle is the rotation by ``-delta``,
so that

    U+ = [[cos d/2,  sin d/2], [-sin d/2, cos d/2]]
    U- = [[cos d/2, -sin d/2], [ sin d/2, cos d/2]]      (d = delta)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, tanh
from typing import Union

import numpy as np

from . import kinematics as kin
from .errors import LabelMismatch, QuadratureTooCoarse
from .qstate import (
    TOTAL_LABELS,
    DensityMatrix,
    PureState,
    bell_type_spin,
    compose_total,
    momentum_state,
    triplet_spin,
)

# rotation axis found by matrix composition for p along +z, observer along +x
WIGNER_AXIS = np.array([0.0, -1.0, 0.0])


def wigner_pair(delta: float) -> tuple[np.ndarray, np.ndarray]:
    """``(U+, U-)``: spin unitaries for the ``p+`` and ``p-`` momentum branches."""
    u_plus = kin.su2_from_rotation(kin.Rotation3.about(WIGNER_AXIS, delta))
    u_minus = kin.su2_from_rotation(kin.Rotation3.about(WIGNER_AXIS, -delta))
    return u_plus, u_minus


# --------------------------------------------------------------------------- scenarios

@dataclass(frozen=True)
class BellType:
    beta: float

    def spin_state(self) -> PureState:
        return bell_type_spin(self.beta)


@dataclass(frozen=True)
class TripletType:
    theta: float
    phi: float

    def spin_state(self) -> PureState:
        return triplet_spin(self.theta, self.phi)


SpinFamily = Union[BellType, TripletType]


@dataclass(frozen=True)
class ScenarioParams:
    """Two-particle scenario: spin family, momentum mixing angle and Wigner angle.

    Build it from speeds with :meth:`from_speeds` (``delta`` then follows from
    the perpendicular-boost formula) or fix ``delta`` directly with
    :meth:`from_delta` for sweeps over the angle itself.
    """

    spin_family: SpinFamily
    alpha: float
    delta: float
    particle_speed: float | None = None
    observer_speed: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.delta) or not 0.0 <= self.delta <= np.pi / 2:
            raise ValueError(f"delta = {self.delta!r} outside [0, pi/2]")

    @classmethod
    def from_speeds(cls, spin_family: SpinFamily, alpha: float, v: float, w: float) -> "ScenarioParams":
        delta = kin.wigner_angle_perpendicular(v, w)
        return cls(spin_family, float(alpha), delta, float(v), float(w))

    @classmethod
    def from_delta(cls, spin_family: SpinFamily, alpha: float, delta: float) -> "ScenarioParams":
        return cls(spin_family, float(alpha), float(delta))

    def initial_state(self) -> PureState:
        return compose_total(momentum_state(self.alpha), self.spin_family.spin_state())


def boost_two_particle_amplitudes(amps: np.ndarray, delta: float) -> np.ndarray:
    """Array-level core of :func:`boost_two_particle` for a 16-vector."""
    u_plus, u_minus = wigner_pair(delta)
    us = (u_plus, u_minus)
    t = np.asarray(amps, dtype=complex).reshape(2, 2, 2, 2)
    out = np.empty_like(t)
    for ma in range(2):
        for mb in range(2):
            # spin of A turns with U(momA), spin of B with U(momB)
            out[ma, mb] = us[ma] @ t[ma, mb] @ us[mb].T
    return out.reshape(16)


def boost_two_particle(total: PureState, delta: float) -> PureState:
    """Apply the momentum-conditioned Wigner rotations to a ``[momA, momB, spinA, spinB]`` state."""
    if tuple(total.factor_labels) != TOTAL_LABELS:
        raise LabelMismatch(f"state labelled {total.factor_labels}, expected {TOTAL_LABELS}")
    out = boost_two_particle_amplitudes(total.amplitudes, delta)
    return PureState(out / np.linalg.norm(out), total.factor_dims, total.factor_labels)


def boost_scenario(params: ScenarioParams) -> tuple[PureState, PureState]:
    initial = params.initial_state()
    return initial, boost_two_particle(initial, params.delta)


def boost_single_wigner(spin: PureState, lam, p, mass: float) -> PureState:
    """Rotate a single spin by ``U(W(lam, p))``."""
    if spin.dim != 2:
        raise LabelMismatch(f"single spin required, got dimension {spin.dim}")
    u = kin.wigner_unitary(lam, p, mass)
    return PureState(u @ spin.amplitudes, spin.factor_dims, spin.factor_labels)


# --------------------------------------------------------------------------- Gaussian packet

@dataclass(frozen=True)
class GaussianPacket:
    """Spin-up particle with Gaussian momentum profile ``|f(p)|^2 ~ exp(-|p - center|^2 / width^2)``.

    ``xi`` is the rapidity of the observer boost along ``boost_axis``; ``nodes``
    is the Gauss-Hermite node count per momentum axis.
    """

    mass: float
    width: float
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    xi: float = 0.0
    nodes: int = 21
    boost_axis: tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if self.width <= 0.0:
            raise ValueError(f"width must be positive, got {self.width!r}")
        if self.xi < 0.0:
            raise ValueError(f"rapidity must be non-negative, got {self.xi!r}")
        if int(self.nodes) < 3:
            raise QuadratureTooCoarse(f"{self.nodes} nodes per axis; at least 3 required")
        axis = np.asarray(self.boost_axis, dtype=float)
        if np.linalg.norm(axis) == 0.0:
            raise ValueError("boost_axis must be nonzero")

    @property
    def relative_width(self) -> float:
        return self.width / self.mass

    def boost(self) -> np.ndarray:
        axis = np.asarray(self.boost_axis, dtype=float)
        return kin.boost_from_velocity(tanh(self.xi) * axis / np.linalg.norm(axis))

    def quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        """Momentum nodes ``(N, 3)`` and weights ``(N,)`` including the ``1/(2E)`` measure, summing to 1."""
        x, wx = np.polynomial.hermite.hermgauss(int(self.nodes))
        grid = np.stack(np.meshgrid(x, x, x, indexing="ij"), axis=-1).reshape(-1, 3)
        wts = np.einsum("i,j,k->ijk", wx, wx, wx).reshape(-1)
        moms = np.asarray(self.center, dtype=float) + self.width * grid
        energy = np.sqrt(self.mass**2 + np.einsum("ij,ij->i", moms, moms))
        wts = wts / (2.0 * energy)
        return moms, wts / wts.sum()


def gaussian_boosted_spin_density(packet: GaussianPacket) -> DensityMatrix:
    """Reduced spin state seen by the boosted observer, momentum traced out.

    Sum over quadrature nodes of ``weight(p) U(W) |up><up| U(W)^dagger`` in a
    fixed node order.
    """
    lam = packet.boost()
    moms, wts = packet.quadrature()
    m = packet.mass
    rho = np.zeros((2, 2), dtype=complex)
    for p3, wt in zip(moms, wts):
        p = np.concatenate(([np.sqrt(m * m + p3 @ p3)], p3))
        col = kin.wigner_unitary(lam, p, m)[:, 0]
        rho += wt * np.outer(col, col.conj())
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def small_width_spin_entropy(width: float, mass: float, xi: float) -> float:
    """Leading-order estimate ``x (1 - ln x)`` with ``x = (width / m)^2 tanh^2(xi/2) / 8`` (natural log)."""
    x = (width / mass) ** 2 * tanh(0.5 * xi) ** 2 / 8.0
    if x == 0.0:
        return 0.0
    return x * (1.0 - log(x))


__all__ = [
    "WIGNER_AXIS",
    "BellType",
    "TripletType",
    "ScenarioParams",
    "GaussianPacket",
    "wigner_pair",
    "boost_two_particle",
    "boost_two_particle_amplitudes",
    "boost_scenario",
    "boost_single_wigner",
    "gaussian_boosted_spin_density",
    "small_width_spin_entropy",
]
