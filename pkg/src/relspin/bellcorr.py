"""CHSH correlations, the Horodecki criterion and the Pauli-Ljubanski spin observable.

Measurement directions are spatial unit vectors of a given frame, embedded as
four-vectors ``(0, a)``.  After a Lorentz transformation only the spatial part
is kept and renormalised.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import kinematics as kin
from . import linalg
from .constants import TOL
from .errors import DimensionMismatch, SuperluminalVelocity
from .qstate import as_density_array, bell_state

TSIRELSON = 2.0 * sqrt(2.0)

# coplanar directions 45 degrees apart (x-y plane); S = -2 sqrt 2 for psi-
BELL_ANGLES = (np.pi / 4, -np.pi / 4, 0.0, -np.pi / 2)  # a, a', b, b'


def in_plane(angle: float) -> np.ndarray:
    return np.array([np.cos(angle), np.sin(angle), 0.0])


def bell_directions() -> tuple[np.ndarray, ...]:
    """``(a, a', b, b')`` for maximal violation by ``psi-``."""
    return tuple(in_plane(t) for t in BELL_ANGLES)


def _unit(a, name="direction") -> np.ndarray:
    a = np.asarray(a, dtype=float).reshape(3)
    n = float(np.linalg.norm(a))
    if n == 0.0:
        raise ValueError(f"{name} has zero length")
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"{name} must be a unit vector, |{name}| = {n!r}")
    return a


# --------------------------------------------------------------------------- types

@dataclass(frozen=True, eq=False)
class MeasurementDirection:
    """A spatial direction defined in frame ``frame_tag`` (time component zero there)."""

    frame_tag: str
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=float).reshape(-1)
        if v.size == 3:
            v = np.concatenate(([0.0], v))
        if v.size != 4:
            raise DimensionMismatch(f"direction needs 3 or 4 components, got {v.size}")
        if np.linalg.norm(v[1:]) == 0.0:
            raise ValueError("direction has zero spatial norm")
        object.__setattr__(self, "vector", v)

    @property
    def spatial(self) -> np.ndarray:
        return self.vector[1:]

    def unit(self) -> np.ndarray:
        return self.spatial / np.linalg.norm(self.spatial)

    def transformed(self, lam, frame_tag: str) -> "MeasurementDirection":
        return MeasurementDirection(frame_tag, np.asarray(lam, dtype=float) @ self.vector)


@dataclass(frozen=True, eq=False)
class SpinObservable:
    matrix: np.ndarray
    direction_used: np.ndarray

    def __post_init__(self):
        if not linalg.is_hermitian(self.matrix):
            raise ValueError("spin observable must be Hermitian")


def spin_along(a) -> np.ndarray:
    """``a . sigma`` for a unit vector ``a``."""
    return kin.sigma_dot(_unit(a))


# --------------------------------------------------------------------------- CHSH

def chsh_expectation(rho_spin, a, b) -> float:
    """``Tr[rho (a.sigma x b.sigma)]``."""
    m = as_density_array(rho_spin)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"two-qubit state required, got shape {m.shape}")
    op = np.kron(spin_along(a), spin_along(b))
    return float(np.trace(m @ op).real)


def _correlation(m, op_a, op_b) -> float:
    return float(np.trace(m @ np.kron(op_a, op_b)).real)


def bell_parameter(rho_spin, a, a_prime, b, b_prime) -> float:
    """``S = E(a,b) - E(a,b') + E(a',b') + E(a',b)``."""
    e = lambda x, y: chsh_expectation(rho_spin, x, y)  # noqa: E731
    return e(a, b) - e(a, b_prime) + e(a_prime, b_prime) + e(a_prime, b)


def bell_parameter_from_observables(rho_spin, obs_a, obs_a_prime, obs_b, obs_b_prime) -> float:
    """Same combination as :func:`bell_parameter` for arbitrary one-qubit observables."""
    m = as_density_array(rho_spin)
    e = lambda x, y: _correlation(m, x, y)  # noqa: E731
    return e(obs_a, obs_b) - e(obs_a, obs_b_prime) + e(obs_a_prime, obs_b_prime) + e(obs_a_prime, obs_b)


def bell_operator(a, a_prime, b, b_prime) -> np.ndarray:
    """``B`` with ``Tr(rho B)`` equal to the Bell parameter."""
    A, Ap, B, Bp = (spin_along(x) for x in (a, a_prime, b, b_prime))
    return np.kron(A, B - Bp) + np.kron(Ap, B + Bp)


def chsh_witness_value(rho_spin, a, a_prime, b, b_prime) -> float:
    """``Tr[rho (2 I - B)]``; non-negative for states satisfying the CHSH bound from above."""
    m = as_density_array(rho_spin)
    return float(np.trace(m @ (2.0 * np.eye(4) - bell_operator(a, a_prime, b, b_prime))).real)


def correlation_matrix(rho_spin) -> np.ndarray:
    """``T_ij = Tr[rho (sigma_i x sigma_j)]``."""
    m = as_density_array(rho_spin)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"two-qubit state required, got shape {m.shape}")
    return np.array(
        [[np.trace(m @ np.kron(si, sj)).real for sj in kin.PAULI] for si in kin.PAULI]
    )


def horodecki_M(rho_spin) -> float:
    """Sum of the two largest eigenvalues of ``T^T T``; the best CHSH value is ``2 sqrt(M)``."""
    t = correlation_matrix(rho_spin)
    w = linalg.eigvalsh(t.T @ t)
    return float(w[-1] + w[-2])


def _normalise_or(x, fallback=(0.0, 0.0, 1.0)) -> np.ndarray:
    n = np.linalg.norm(x)
    return x / n if n > TOL.EPS_NORM else np.array(fallback, dtype=float)


def random_search_bell(rho_spin, rng: np.random.Generator, budget: int = 10_000) -> float:
    """Largest ``|S|`` found over ``budget`` random direction settings.

    Alice's directions ``a, a'`` are sampled uniformly; for each pair Bob's
    directions are set to the best response ``b ~ T^T(a + a')``,
    ``b' ~ T^T(a' - a)``, and the winning setting is re-scored with
    :func:`bell_parameter`.
    """
    t = correlation_matrix(rho_spin)
    a = rng.normal(size=(budget, 3))
    ap = rng.normal(size=(budget, 3))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    ap /= np.linalg.norm(ap, axis=1, keepdims=True)
    x, y = a @ t, ap @ t
    score = np.linalg.norm(x + y, axis=1) + np.linalg.norm(y - x, axis=1)
    k = int(np.argmax(score))
    b = _normalise_or(x[k] + y[k])
    bp = _normalise_or(y[k] - x[k])
    return abs(bell_parameter(rho_spin, a[k], ap[k], b, bp))


# --------------------------------------------------------------------------- relativistic observable

def pl_direction(a, v) -> np.ndarray:
    """Rest-frame direction seen by a particle with velocity ``v`` for lab direction ``a``.

    ``(sqrt(1 - v^2) a_perp + a_par) / sqrt(1 + v^2 (a_par^2 - 1))`` with
    components taken relative to ``v``.
    """
    a = _unit(a)
    v = np.asarray(v, dtype=float).reshape(3)
    v2 = float(v @ v)
    if not np.all(np.isfinite(v)) or v2 >= 1.0:
        raise SuperluminalVelocity(f"|v| = {sqrt(v2)!r} is not below 1")
    if v2 == 0.0:
        return a.copy()
    vhat = v / sqrt(v2)
    a_par = float(a @ vhat)
    perp = a - a_par * vhat
    out = (sqrt(1.0 - v2) * perp + a_par * vhat) / sqrt(1.0 + v2 * (a_par * a_par - 1.0))
    return out


def _rest_frame_direction(a4, p, mass) -> np.ndarray:
    rest = kin.lorentz_inverse(kin.standard_boost(p, mass)) @ np.asarray(a4, dtype=float)
    s = rest[1:]
    n = float(np.linalg.norm(s))
    if n == 0.0:
        raise ValueError("direction has no spatial part in the rest frame")
    return s / n


def pl_observable(a, p, mass: float) -> SpinObservable:
    """Spin observable ``n.sigma`` with ``n`` the normalised spatial part of ``L^-1(p) a``.

    ``a`` is a :class:`MeasurementDirection` (or a 3-/4-vector) in the frame
    where the particle has momentum ``p``.
    """
    if not isinstance(a, MeasurementDirection):
        a = MeasurementDirection("", a)
    n = _rest_frame_direction(a.vector, p, mass)
    return SpinObservable(kin.sigma_dot(n), n)


# --------------------------------------------------------------------------- boosted CHSH demo

@dataclass(frozen=True)
class ChshDemoResult:
    S_initial: float
    S_boosted_fixed_directions: float
    S_boosted_transformed_directions: float
    delta: float


def boosted_chsh_demo(v: float, w: float, directions=None, mass: float = 1.0) -> ChshDemoResult:
    """CHSH test on a ``psi-`` spin pair with momenta ``p+ p-`` (speed ``v`` along ``+z`` / ``-z``).

    The observer frame moves along ``x`` with speed ``w``.  Three Bell values:

    * initial: relativistic observables for the lab directions, on the unboosted spins;
    * fixed: the same spin observables applied to the boosted spin state;
    * transformed: directions mapped by ``Lambda`` and relativistic observables
      built from the boosted momenta, on the boosted spin state.
    """
    dirs = bell_directions() if directions is None else tuple(_unit(d) for d in directions)
    if len(dirs) != 4:
        raise ValueError("need four directions (a, a', b, b')")
    lam = kin.boost_x(w)
    p_a = kin.four_momentum(mass, (0.0, 0.0, v))
    p_b = kin.four_momentum(mass, (0.0, 0.0, -v))
    delta = kin.wigner_angle_perpendicular(v, w)

    rho0 = bell_state("psi-").projector()
    u_a = kin.wigner_unitary(lam, p_a, mass)
    u_b = kin.wigner_unitary(lam, p_b, mass)
    u = np.kron(u_a, u_b)
    rho1 = u @ rho0 @ u.conj().T

    lab = [MeasurementDirection("S'", d) for d in dirs]
    obs_a = [pl_observable(d, p_a, mass).matrix for d in lab[:2]]
    obs_b = [pl_observable(d, p_b, mass).matrix for d in lab[2:]]
    s_initial = bell_parameter_from_observables(rho0, *obs_a, *obs_b)
    s_fixed = bell_parameter_from_observables(rho1, *obs_a, *obs_b)

    boosted = [d.transformed(lam, "S''") for d in lab]
    q_a, q_b = lam @ p_a, lam @ p_b
    obs_a2 = [pl_observable(d, q_a, mass).matrix for d in boosted[:2]]
    obs_b2 = [pl_observable(d, q_b, mass).matrix for d in boosted[2:]]
    s_transformed = bell_parameter_from_observables(rho1, *obs_a2, *obs_b2)
    return ChshDemoResult(s_initial, s_fixed, s_transformed, delta)


__all__ = [
    "TSIRELSON",
    "BELL_ANGLES",
    "MeasurementDirection",
    "SpinObservable",
    "ChshDemoResult",
    "bell_directions",
    "in_plane",
    "spin_along",
    "chsh_expectation",
    "bell_parameter",
    "bell_parameter_from_observables",
    "bell_operator",
    "chsh_witness_value",
    "correlation_matrix",
    "horodecki_M",
    "random_search_bell",
    "pl_direction",
    "pl_observable",
    "boosted_chsh_demo",
]
