"""Pure states and density matrices over labelled qubit factors.

Basis index 0 of every qubit is "up" for a spin factor and ``p+`` for a
momentum factor; index 1 is "down" / ``p-``.  The two-particle states use the
global factor order ``[momA, momB, spinA, spinB]``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from math import cos, prod, sin, sqrt

import numpy as np

from . import linalg
from .constants import TOL
from .errors import DimensionMismatch, InvalidPartition, LabelMismatch, NotHermitian
from .kinematics import PAULI

MOM_A, MOM_B, SPIN_A, SPIN_B = "momA", "momB", "spinA", "spinB"
TOTAL_LABELS = (MOM_A, MOM_B, SPIN_A, SPIN_B)
MOMENTUM_LABELS = (MOM_A, MOM_B)
SPIN_LABELS = (SPIN_A, SPIN_B)


def _labels_for(n: int, labels) -> tuple[str, ...]:
    if labels is None:
        return tuple(f"q{i}" for i in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise LabelMismatch(f"{len(labels)} labels for {n} factors")
    if len(set(labels)) != n:
        raise LabelMismatch(f"duplicate labels in {labels}")
    return labels


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised amplitude vector over tensor factors (factor 0 leftmost)."""

    amplitudes: np.ndarray
    factor_dims: tuple[int, ...] = None
    factor_labels: tuple[str, ...] = None

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dims = self.factor_dims
        if dims is None:
            n = int(round(np.log2(amps.size)))
            if 2**n != amps.size:
                raise DimensionMismatch(f"{amps.size} amplitudes are not a qubit register")
            dims = (2,) * n
        dims = tuple(int(d) for d in dims)
        if prod(dims) != amps.size:
            raise DimensionMismatch(f"factor dims {dims} do not match {amps.size} amplitudes")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > TOL.EPS_NORM:
            raise ValueError(f"state not normalised: <psi|psi> = {norm2!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "factor_dims", dims)
        object.__setattr__(self, "factor_labels", _labels_for(len(dims), self.factor_labels))

    @classmethod
    def normalized(cls, amplitudes, factor_dims=None, factor_labels=None) -> "PureState":
        a = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(a / np.linalg.norm(a), factor_dims, factor_labels)

    @property
    def n_factors(self) -> int:
        return len(self.factor_dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector(), self.factor_dims, self.factor_labels)

    def inner(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def relabel(self, labels) -> "PureState":
        return PureState(self.amplitudes, self.factor_dims, labels)

    def same_ray(self, other: "PureState", tol: float = 1e-12) -> bool:
        """Equality up to a global phase (projector comparison)."""
        if self.amplitudes.shape != other.amplitudes.shape:
            return False
        return bool(np.max(np.abs(self.projector() - other.projector())) <= tol)

    def reduced(self, keep: Sequence[int]) -> np.ndarray:
        """Reduced density matrix (raw array) on the factors ``keep``, in ascending order."""
        return reduce_pure(self.amplitudes, self.factor_dims, keep)


def reduce_pure(amps: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """``Tr_rest |psi><psi|`` computed straight from the amplitudes (no 16x16 projector)."""
    dims = list(dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"keep={keep} is not a nonempty subset of range({n})")
    drop = [i for i in range(n) if i not in keep]
    dk = prod(dims[i] for i in keep)
    m = np.asarray(amps).reshape(dims).transpose(keep + drop).reshape(dk, -1)
    return m @ m.conj().T


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator over tensor factors."""

    matrix: np.ndarray
    factor_dims: tuple[int, ...] = None
    factor_labels: tuple[str, ...] = None

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix).copy()
        n = m.shape[0]
        if m.shape != (n, n):
            raise DimensionMismatch(f"square matrix required, got {m.shape}")
        dims = self.factor_dims
        if dims is None:
            k = int(round(np.log2(n)))
            dims = (2,) * k if 2**k == n else (n,)
        dims = tuple(int(d) for d in dims)
        if prod(dims) != n:
            raise DimensionMismatch(f"factor dims {dims} do not match size {n}")
        if not linalg.is_hermitian(m):
            raise NotHermitian(f"max|rho - rho^dagger| = {linalg.hermiticity_defect(m):.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TOL.EPS_NORM * max(1, n):
            raise ValueError(f"trace is {tr!r}, expected 1")
        lo = float(linalg.eigvalsh(m)[0])
        if lo < -TOL.EPS_EIG:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lo:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "factor_dims", dims)
        object.__setattr__(self, "factor_labels", _labels_for(len(dims), self.factor_labels))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(self.matrix)

    def reduce(self, keep: Sequence[int]) -> "DensityMatrix":
        keep = sorted(set(int(k) for k in keep))
        m = linalg.partial_trace(self.matrix, self.factor_dims, keep)
        return DensityMatrix(
            m, tuple(self.factor_dims[i] for i in keep), tuple(self.factor_labels[i] for i in keep)
        )

    def reduce_to(self, labels: Sequence[str]) -> "DensityMatrix":
        try:
            idx = [self.factor_labels.index(x) for x in labels]
        except ValueError as exc:
            raise LabelMismatch(str(exc)) from None
        return self.reduce(idx)

    def partial_transpose(self, subsystem) -> np.ndarray:
        """Raw partial transpose (generally not a valid density matrix)."""
        return linalg.partial_transpose(self.matrix, self.factor_dims, subsystem)

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))


def as_density_array(rho) -> np.ndarray:
    """Accept a :class:`DensityMatrix`, :class:`PureState` or plain array; return the matrix."""
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    if isinstance(rho, PureState):
        return rho.projector()
    return linalg.as_matrix(rho)


def mixture(weights, states, factor_dims=None, factor_labels=None) -> DensityMatrix:
    """Convex combination of pure states and/or density matrices."""
    weights = np.asarray(weights, dtype=float)
    m = sum(w * as_density_array(s) for w, s in zip(weights, states))
    return DensityMatrix(m, factor_dims, factor_labels)


# --------------------------------------------------------------------------- partitions

@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of factor indices covering ``range(n)``."""

    blocks: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        if not blocks or any(not b for b in blocks):
            raise InvalidPartition(f"empty block in {self.blocks}")
        flat = [i for b in blocks for i in b]
        if sorted(flat) != list(range(len(flat))):
            raise InvalidPartition(f"blocks {blocks} do not partition range({len(flat)})")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n_factors(self) -> int:
        return sum(len(b) for b in self.blocks)

    def check(self, n: int) -> None:
        if self.n_factors != n:
            raise InvalidPartition(f"partition covers {self.n_factors} factors, state has {n}")

    @classmethod
    def bipartition(cls, block, n: int) -> "Partition":
        block = tuple(sorted(block))
        return cls((block, tuple(i for i in range(n) if i not in block)))

    @classmethod
    def all_bipartitions(cls, n: int) -> list["Partition"]:
        """The ``2^(n-1) - 1`` unordered splits into two nonempty blocks."""
        out = []
        for mask in range(1, 2 ** (n - 1)):
            block = tuple(i for i in range(n) if mask >> i & 1)
            out.append(cls.bipartition(block, n))
        return out


FOUR_QUBIT = Partition(((0,), (1,), (2,), (3,)), "four_qubit")
SPIN_MOMENTUM = Partition(((0, 1), (2, 3)), "spin_momentum")
ALICE_BOB = Partition(((0, 2), (1, 3)), "alice_bob")
CROSS = Partition(((0, 3), (1, 2)), "cross")
STANDARD_PARTITIONS = (FOUR_QUBIT, SPIN_MOMENTUM, ALICE_BOB)


# --------------------------------------------------------------------------- constructors

_BELL = {
    "psi+": (0, 1, 1, 0),
    "psi-": (0, 1, -1, 0),
    "phi+": (1, 0, 0, 1),
    "phi-": (1, 0, 0, -1),
}
_BELL_ALIASES = {"ψ⁺": "psi+", "ψ⁻": "psi-", "φ⁺": "phi+", "φ⁻": "phi-"}


def bell_state(kind: str, labels=SPIN_LABELS) -> PureState:
    """One of ``psi+``, ``psi-``, ``phi+``, ``phi-`` in the basis order uu, ud, du, dd."""
    key = _BELL_ALIASES.get(kind, kind)
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {sorted(_BELL)}")
    return PureState(np.array(_BELL[key], dtype=complex) / sqrt(2.0), (2, 2), labels)


def basis_state(bits: Sequence[int], labels=None) -> PureState:
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int("".join(str(int(b)) for b in bits), 2)] = 1.0
    return PureState(amps, (2,) * len(bits), labels)


def momentum_state(alpha: float) -> PureState:
    """``cos(alpha)|p+ p-> + sin(alpha)|p- p+>``."""
    amps = np.array([0.0, cos(alpha), sin(alpha), 0.0], dtype=complex)
    return PureState(amps, (2, 2), MOMENTUM_LABELS)


def bell_type_spin(beta: float) -> PureState:
    """``cos(beta)|ud> + sin(beta)|du>``."""
    amps = np.array([0.0, cos(beta), sin(beta), 0.0], dtype=complex)
    return PureState(amps, (2, 2), SPIN_LABELS)


def triplet_spin(theta: float, phi: float) -> PureState:
    """Real superposition of the three triplet states parametrised by two angles."""
    s = sin(theta) * sin(phi) / sqrt(2.0)
    amps = np.array([sin(theta) * cos(phi), s, s, cos(theta)], dtype=complex)
    return PureState(amps, (2, 2), SPIN_LABELS)


def compose_total(mom: PureState, spin: PureState) -> PureState:
    """Product state with factor order ``[momA, momB, spinA, spinB]``."""
    if tuple(mom.factor_labels) != MOMENTUM_LABELS:
        raise LabelMismatch(f"momentum state labelled {mom.factor_labels}, expected {MOMENTUM_LABELS}")
    if tuple(spin.factor_labels) != SPIN_LABELS:
        raise LabelMismatch(f"spin state labelled {spin.factor_labels}, expected {SPIN_LABELS}")
    return PureState(np.kron(mom.amplitudes, spin.amplitudes), (2, 2, 2, 2), TOTAL_LABELS)


# --------------------------------------------------------------------------- analysis

def schmidt_coefficients(state: PureState, bipartition: Partition) -> np.ndarray:
    """Squared Schmidt coefficients ``p_i`` (descending, only those above ``TOL.EPS_RANK``).

    They are the nonzero eigenvalues of either reduced density matrix and sum to 1.
    """
    if len(bipartition.blocks) != 2:
        raise InvalidPartition(f"need exactly two blocks, got {len(bipartition.blocks)}")
    bipartition.check(state.n_factors)
    block = bipartition.blocks[0]
    # reduce onto the smaller side: fewer eigenvalues to compute
    if prod(state.factor_dims[i] for i in block) > prod(
        state.factor_dims[i] for i in bipartition.blocks[1]
    ):
        block = bipartition.blocks[1]
    w = linalg.eigvalsh(state.reduced(block))[::-1]
    return w[w > TOL.EPS_RANK].copy()


def schmidt_rank(state: PureState, bipartition: Partition) -> int:
    return int(schmidt_coefficients(state, bipartition).size)


def bloch_vector(rho) -> np.ndarray:
    """``a_i = Tr(rho sigma_i)`` for a single-qubit density matrix."""
    m = as_density_array(rho)
    if m.shape != (2, 2):
        raise DimensionMismatch(f"single-qubit operator required, got shape {m.shape}")
    return np.array([np.trace(m @ s).real for s in PAULI])


def density_from_bloch(a) -> DensityMatrix:
    a = np.asarray(a, dtype=float)
    return DensityMatrix(0.5 * (np.eye(2) + sum(x * s for x, s in zip(a, PAULI))))
