"""Special-relativistic kinematics: boosts, Wigner rotations and the SO(3) -> SU(2) lift.

Conventions (units with c = 1):

* Four-vectors are length-4 float arrays ``(t, x, y, z)`` with metric
  ``diag(+1, -1, -1, -1)``.
* :func:`boost_from_velocity` is the *passive* coordinate change into a frame
  moving with velocity ``v``: it sends the four-velocity ``(gamma, gamma v)`` to
  ``(1, 0, 0, 0)``.  The active boost taking the rest momentum ``(m, 0)`` to
  ``p`` is therefore ``boost_from_velocity(-p/E)``; see :func:`standard_boost`.
* Rotations act actively, right-handed about their axis.

For a particle moving along ``+z`` with speed ``v`` seen by an observer moving
along ``+x`` with speed ``w`` (``Lambda = boost_from_velocity((w, 0, 0))``) the
Wigner rotation is a rotation by ``delta`` about ``-y``, i.e. about ``-(v x w)``.
A particle moving along ``-z`` gets the opposite rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, sin, sqrt

import numpy as np

from .constants import TOL
from .errors import OffMassShell, SuperluminalVelocity

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_Z_AXIS = np.array([0.0, 0.0, 1.0])


def sigma_dot(n) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    n = np.asarray(n, dtype=float)
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


# --------------------------------------------------------------------------- four-vectors

def four_vector(t, x, y, z) -> np.ndarray:
    return np.array([t, x, y, z], dtype=float)


def minkowski_dot(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(a[0] * b[0] - a[1:] @ b[1:])


def minkowski_norm(a) -> float:
    """``eta(a, a)``; positive for timelike vectors."""
    return minkowski_dot(a, a)


def gamma_factor(speed: float) -> float:
    speed = float(speed)
    if not 0.0 <= abs(speed) < 1.0:
        raise SuperluminalVelocity(f"|v| = {abs(speed)!r} is not below 1")
    return 1.0 / sqrt(1.0 - speed * speed)


def _gamma_minus_one(speed: float) -> float:
    # gamma - 1 = gamma^2 v^2 / (gamma + 1), without cancellation at small v
    g = gamma_factor(speed)
    return g * g * speed * speed / (g + 1.0)


def _check_velocity(v) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)) or float(v @ v) >= 1.0:
        raise SuperluminalVelocity(f"|v| = {np.linalg.norm(v)!r} is not below 1")
    return v


def four_momentum(mass: float, velocity) -> np.ndarray:
    """On-shell momentum ``(m gamma, m gamma v)``."""
    v = _check_velocity(velocity)
    g = 1.0 / sqrt(1.0 - float(v @ v))
    return np.concatenate(([mass * g], mass * g * v))


def velocity_of(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return p[1:] / p[0]


# --------------------------------------------------------------------------- rapidity

def rapidity_from_speed(speed: float) -> float:
    if not 0.0 <= speed < 1.0:
        raise SuperluminalVelocity(f"speed {speed!r} outside [0, 1)")
    return float(np.arctanh(speed))


def speed_from_rapidity(u: float) -> float:
    if u < 0.0:
        raise ValueError(f"rapidity {u!r} is negative")
    return float(np.tanh(u))


# --------------------------------------------------------------------------- Lorentz matrices

def boost_from_velocity(v) -> np.ndarray:
    """Pure boost into the frame moving with 3-velocity ``v`` (symmetric 4x4)."""
    v = _check_velocity(v)
    b2 = float(v @ v)
    lam = np.eye(4)
    if b2 == 0.0:
        return lam
    g = 1.0 / sqrt(1.0 - b2)
    lam[0, 0] = g
    lam[0, 1:] = lam[1:, 0] = -g * v
    lam[1:, 1:] += (g - 1.0) * np.outer(v, v) / b2
    return lam


def boost_x(speed: float) -> np.ndarray:
    return boost_from_velocity((speed, 0.0, 0.0))


def rotation_embedding(r) -> np.ndarray:
    """Embed a 3x3 rotation (or a :class:`Rotation3`) as a 4x4 Lorentz matrix."""
    if isinstance(r, Rotation3):
        r = r.matrix()
    lam = np.eye(4)
    lam[1:, 1:] = r
    return lam


def lorentz_inverse(lam) -> np.ndarray:
    """Exact inverse ``eta L^T eta`` of a Lorentz matrix."""
    lam = np.asarray(lam, dtype=float)
    return METRIC @ lam.T @ METRIC


def lorentz_defect(lam) -> float:
    """``max |L^T eta L - eta|``."""
    lam = np.asarray(lam, dtype=float)
    return float(np.max(np.abs(lam.T @ METRIC @ lam - METRIC)))


def is_proper_orthochronous(lam, tol: float = TOL.EPS_HERM) -> bool:
    lam = np.asarray(lam, dtype=float)
    scale = max(1.0, float(np.max(np.abs(lam))) ** 2)
    return (
        lorentz_defect(lam) <= tol * scale
        and abs(np.linalg.det(lam) - 1.0) <= tol * scale
        and lam[0, 0] >= 1.0 - tol
    )


def _check_on_shell(p, mass: float) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(4)
    if mass <= 0.0:
        raise OffMassShell(f"mass must be positive, got {mass!r}")
    if p[0] <= 0.0:
        raise OffMassShell("energy component must be positive")
    defect = abs(minkowski_norm(p) - mass * mass)
    if defect > TOL.EPS_MASS_SHELL * max(1.0, p[0] * p[0]):
        raise OffMassShell(f"eta(p, p) - m^2 = {defect:.3e}")
    return p


def standard_boost(p, mass: float) -> np.ndarray:
    """The boost ``L(p)`` with ``L(p) (m, 0, 0, 0) = p``."""
    p = _check_on_shell(p, mass)
    return boost_from_velocity(-p[1:] / p[0])


# --------------------------------------------------------------------------- rotations

@dataclass(frozen=True, eq=False)
class Rotation3:
    """Rotation by ``angle`` in [0, pi] about the unit vector ``axis``."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float).reshape(3)
        norm = float(np.linalg.norm(axis))
        if abs(norm - 1.0) > TOL.EPS_NORM:
            raise ValueError(f"rotation axis must be a unit vector, |axis| = {norm!r}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", float(self.angle))

    @classmethod
    def about(cls, axis, angle: float) -> "Rotation3":
        """Normalise ``axis`` and fold ``angle`` into [0, pi] (flipping the axis if needed)."""
        axis = np.asarray(axis, dtype=float)
        axis = axis / np.linalg.norm(axis)
        angle = float(np.remainder(angle + np.pi, 2.0 * np.pi) - np.pi)
        if angle < 0.0:
            axis, angle = -axis, -angle
        return cls(axis, angle)

    @classmethod
    def identity(cls) -> "Rotation3":
        return cls(_Z_AXIS.copy(), 0.0)

    def matrix(self) -> np.ndarray:
        """Rodrigues formula."""
        n = self.axis
        k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
        return np.eye(3) + sin(self.angle) * k + (1.0 - cos(self.angle)) * (k @ k)

    def rotvec(self) -> np.ndarray:
        return self.angle * self.axis

    def same_as(self, other: "Rotation3", tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.matrix() - other.matrix())) <= tol)

    def __repr__(self):
        return f"Rotation3(axis={np.round(self.axis, 12).tolist()}, angle={self.angle!r})"


def rotation_from_matrix(r) -> Rotation3:
    """Axis-angle form of a 3x3 rotation matrix.

    Angle from the trace and the antisymmetric part via ``atan2``; below
    ``TOL.EPS_ANGLE`` the identity with axis z is returned.  The axis comes from
    the antisymmetric part up to pi/2 and from the symmetric part beyond.
    """
    r = np.asarray(r, dtype=float)
    anti = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    sin_a = 0.5 * float(np.linalg.norm(anti))
    cos_a = 0.5 * (float(np.trace(r)) - 1.0)
    angle = atan2(sin_a, cos_a)
    if angle < TOL.EPS_ANGLE:
        return Rotation3.identity()
    if cos_a >= 0.0:
        return Rotation3(anti / np.linalg.norm(anti), angle)
    # past pi/2 the antisymmetric part shrinks; (R + R^T)/2 - cos I = (1 - cos) n n^T is better conditioned
    outer = 0.5 * (r + r.T) - cos_a * np.eye(3)
    k = int(np.argmax(np.diag(outer)))
    axis = outer[:, k] / np.linalg.norm(outer[:, k])
    if anti @ axis < 0.0:
        axis = -axis
    return Rotation3(axis / np.linalg.norm(axis), angle)


# --------------------------------------------------------------------------- Wigner rotation

def wigner_matrix(lam, p, mass: float) -> np.ndarray:
    """``W(Lambda, p) = L^-1(Lambda p) Lambda L(p)`` as a 4x4 matrix."""
    p = _check_on_shell(p, mass)
    lam = np.asarray(lam, dtype=float)
    q = lam @ p
    return lorentz_inverse(standard_boost(q, mass)) @ lam @ standard_boost(p, mass)


def wigner_rotation(lam, p, mass: float) -> Rotation3:
    return rotation_from_matrix(wigner_matrix(lam, p, mass)[1:, 1:])


def wigner_angle_perpendicular(v: float, w: float) -> float:
    """Wigner angle for a particle with speed ``v`` seen from a frame moving at ``w`` perpendicular to it.

    ``cos delta = (gamma_v + gamma_w) / (1 + gamma_v gamma_w)``, evaluated through
    ``1 - cos delta = (gamma_v - 1)(gamma_w - 1) / (1 + gamma_v gamma_w)`` so that
    small angles keep full relative precision.
    """
    gv, gw = gamma_factor(v), gamma_factor(w)
    av, aw = _gamma_minus_one(v), _gamma_minus_one(w)
    denom = 1.0 + gv * gw
    one_minus_cos = av * aw / denom
    one_plus_cos = 2.0 - one_minus_cos
    return atan2(sqrt(one_minus_cos * one_plus_cos), (gv + gw) / denom)


def wigner_angle_general(v, w) -> float:
    """Rotation angle of the composition of two pure boosts with 3-velocities ``v`` and ``w``.

    Uses ``gamma_u = gamma_v gamma_w (1 + v.w)`` and
    ``1 + cos delta = (1 + gamma_u + gamma_v + gamma_w)^2 / ((1 + gamma_u)(1 + gamma_v)(1 + gamma_w))``.

    Here ``v`` and ``w`` are *active* boost velocities.  For a particle with
    velocity ``v`` observed from a frame moving with velocity ``w`` (the
    :func:`wigner_rotation` of ``boost_from_velocity(w)``) call it with ``(v, -w)``.
    """
    v = _check_velocity(v)
    w = _check_velocity(w)
    sv, sw = float(np.linalg.norm(v)), float(np.linalg.norm(w))
    gv, gw = gamma_factor(sv), gamma_factor(sw)
    a, b = _gamma_minus_one(sv), _gamma_minus_one(sw)
    # gamma_u - 1 = (gv - 1)(gw - 1) + (gv - 1) + (gw - 1) + gv gw v.w
    c = a * b + a + b + gv * gw * float(v @ w)
    # 1 - cos delta = N / D with N expanded in the (gamma - 1) variables
    num = 2.0 * a * b * c + 2.0 * (a * b + a * c + b * c) - (a * a + b * b + c * c)
    den = (c + 2.0) * (a + 2.0) * (b + 2.0)
    one_minus_cos = max(num / den, 0.0)
    one_plus_cos = 2.0 - one_minus_cos
    return atan2(sqrt(one_minus_cos * one_plus_cos), one_plus_cos - 1.0)


# --------------------------------------------------------------------------- SU(2)

def su2_from_rotation(r: Rotation3) -> np.ndarray:
    """Principal lift ``exp(-i angle/2 axis.sigma)``; satisfies ``U (x.sigma) U^dagger = (R x).sigma``."""
    half = 0.5 * r.angle
    return cos(half) * np.eye(2, dtype=complex) - 1j * sin(half) * sigma_dot(r.axis)


def rotation_matrix_from_su2(u) -> np.ndarray:
    """The SO(3) image of ``u``: ``R_ij = Tr(sigma_i u sigma_j u^dagger) / 2``."""
    u = np.asarray(u, dtype=complex)
    ud = u.conj().T
    return np.array(
        [[0.5 * np.trace(si @ u @ sj @ ud).real for sj in PAULI] for si in PAULI]
    )


def is_su2(u, tol: float = TOL.EPS_HERM) -> bool:
    u = np.asarray(u, dtype=complex)
    return (
        u.shape == (2, 2)
        and float(np.max(np.abs(u.conj().T @ u - np.eye(2)))) <= tol
        and abs(np.linalg.det(u) - 1.0) <= tol
    )


def wigner_unitary(lam, p, mass: float) -> np.ndarray:
    """Spin-1/2 representative ``U(W(Lambda, p))``."""
    return su2_from_rotation(wigner_rotation(lam, p, mass))
