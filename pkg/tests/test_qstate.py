import numpy as np
import pytest
from conftest import random_density, random_pure
from hypothesis import given
from hypothesis import strategies as st

from relspin import linalg
from relspin.errors import DimensionMismatch, InvalidPartition, LabelMismatch, NotHermitian
from relspin.qstate import (
    ALICE_BOB,
    FOUR_QUBIT,
    SPIN_MOMENTUM,
    DensityMatrix,
    Partition,
    PureState,
    basis_state,
    bell_state,
    bell_type_spin,
    bloch_vector,
    compose_total,
    momentum_state,
    schmidt_coefficients,
    schmidt_rank,
    triplet_spin,
)

angles = st.floats(-2 * np.pi, 2 * np.pi)


def test_bell_states():
    s = np.sqrt(0.5)
    assert np.allclose(bell_state("psi-").amplitudes, [0, s, -s, 0], atol=0)
    assert np.allclose(bell_state("psi+").amplitudes, [0, s, s, 0], atol=0)
    assert np.allclose(bell_state("phi+").amplitudes, [s, 0, 0, s], atol=0)
    assert np.allclose(bell_state("phi-").amplitudes, [s, 0, 0, -s], atol=0)
    assert abs(bell_state("psi+").inner(bell_state("psi-"))) <= 1e-16
    phi = bell_state("phi+").density()
    assert np.allclose(phi.reduce([0]).matrix, np.eye(2) / 2, atol=1e-15)
    assert np.allclose(phi.reduce([1]).matrix, np.eye(2) / 2, atol=1e-15)
    with pytest.raises(ValueError):
        bell_state("chi")


def test_momentum_state():
    assert momentum_state(0).same_ray(basis_state([0, 1]))
    sym = momentum_state(np.pi / 4)
    assert np.allclose(sym.amplitudes, [0, np.sqrt(0.5), np.sqrt(0.5), 0], atol=1e-16)
    assert np.allclose(sym.density().reduce([0]).matrix, np.eye(2) / 2, atol=1e-15)


def test_bell_type_spin():
    assert bell_type_spin(np.pi / 4).same_ray(bell_state("psi+"))
    assert bell_type_spin(3 * np.pi / 4).same_ray(bell_state("psi-"))
    assert np.allclose(bell_type_spin(3 * np.pi / 4).amplitudes, -bell_state("psi-").amplitudes, atol=1e-15)
    assert bell_type_spin(0).same_ray(basis_state([0, 1]))


def test_triplet_spin():
    assert triplet_spin(0, 0.3).same_ray(basis_state([1, 1]))
    assert triplet_spin(np.pi / 4, 0).same_ray(bell_state("phi+"))
    assert triplet_spin(np.pi / 2, 0).same_ray(basis_state([0, 0]))
    assert triplet_spin(np.pi / 2, np.pi / 2).same_ray(bell_state("psi+"))


@given(angles, angles, angles, angles)
def test_constructors_normalised(a, b, t, p):
    for s in (momentum_state(a), bell_type_spin(b), triplet_spin(t, p), compose_total(momentum_state(a), triplet_spin(t, p))):
        assert abs(np.linalg.norm(s.amplitudes) - 1) <= 1e-12
        rho = s.density()
        assert linalg.is_hermitian(rho.matrix)


def test_compose_total():
    total = compose_total(momentum_state(0), bell_type_spin(0))
    assert total.factor_labels == ("momA", "momB", "spinA", "spinB")
    assert total.same_ray(basis_state([0, 1, 0, 1]))
    with pytest.raises(LabelMismatch):
        compose_total(bell_type_spin(0), momentum_state(0))


@given(angles, angles)
def test_compose_total_reductions(a, b):
    total = compose_total(momentum_state(a), bell_type_spin(b))
    assert np.allclose(total.reduced([0, 1]), momentum_state(a).projector(), atol=1e-14)
    assert np.allclose(total.reduced([2, 3]), bell_type_spin(b).projector(), atol=1e-14)
    assert schmidt_rank(total, SPIN_MOMENTUM) == 1


def test_schmidt_examples():
    assert np.allclose(schmidt_coefficients(basis_state([0, 1]), Partition(((0,), (1,)))), [1])
    assert np.allclose(schmidt_coefficients(bell_state("psi-"), Partition(((0,), (1,)))), [0.5, 0.5], atol=1e-14)
    with pytest.raises(InvalidPartition):
        schmidt_coefficients(bell_state("psi-"), Partition(((0,), (1,), (2,))))
    with pytest.raises(InvalidPartition):
        schmidt_coefficients(compose_total(momentum_state(0), bell_type_spin(0)), FOUR_QUBIT)


def test_schmidt_both_sides_agree(rng):
    for _ in range(10):
        psi = PureState(random_pure(rng, 16))
        part = Partition(((0, 2), (1, 3)))
        p = schmidt_coefficients(psi, part)
        ea = np.linalg.eigvalsh(psi.reduced([0, 2]))[::-1]
        eb = np.linalg.eigvalsh(psi.reduced([1, 3]))[::-1]
        assert np.allclose(ea, eb, atol=1e-12)
        assert np.allclose(p, ea[: p.size], atol=1e-12)
        assert abs(p.sum() - 1) <= 1e-12


def test_partition_validation():
    with pytest.raises(InvalidPartition):
        Partition(((0, 1), (1, 2)))
    with pytest.raises(InvalidPartition):
        Partition(((0,), (2,)))
    assert len(Partition.all_bipartitions(4)) == 7
    assert ALICE_BOB.blocks == ((0, 2), (1, 3))


def test_bloch_vector():
    assert np.allclose(bloch_vector(basis_state([0]).projector()), [0, 0, 1])
    assert np.allclose(bloch_vector(np.eye(2) / 2), [0, 0, 0])
    rho = 0.5 * (np.eye(2) + 0.5 * np.array([[0, 1], [1, 0]]))
    assert np.allclose(bloch_vector(rho), [0.5, 0, 0], atol=1e-16)
    with pytest.raises(DimensionMismatch):
        bloch_vector(np.eye(4) / 4)


@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2]))
def test_bloch_norm(seed, rank):
    rho = random_density(np.random.default_rng(seed), 2, rank)
    n = np.linalg.norm(bloch_vector(rho))
    assert n <= 1 + 1e-10
    assert (abs(n - 1) <= 1e-10) == (rank == 1)


def test_density_validation():
    with pytest.raises(NotHermitian):
        DensityMatrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        PureState([1, 1])
    with pytest.raises(DimensionMismatch):
        PureState([1, 0, 0], (2, 2))


def test_reduce_by_label():
    total = compose_total(momentum_state(0.3), bell_type_spin(0.2)).density()
    spins = total.reduce_to(["spinA", "spinB"])
    assert spins.factor_labels == ("spinA", "spinB")
    assert np.allclose(spins.matrix, bell_type_spin(0.2).projector(), atol=1e-14)
    with pytest.raises(LabelMismatch):
        total.reduce_to(["spinC"])
