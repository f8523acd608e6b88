import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relspin import kinematics as kin
from relspin.errors import OffMassShell, SuperluminalVelocity

ETA = np.diag([1.0, -1, -1, -1])


def velocity(max_speed=0.99):
    return st.tuples(
        st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(0, max_speed)
    ).filter(lambda t: np.linalg.norm(t[:3]) > 1e-3).map(
        lambda t: np.array(t[:3]) / np.linalg.norm(t[:3]) * t[3]
    )


def random_velocity(rng, max_speed=0.99):
    d = rng.normal(size=3)
    return d / np.linalg.norm(d) * rng.uniform(0, max_speed)


def assert_lorentz(lam):
    assert np.max(np.abs(lam.T @ ETA @ lam - ETA)) <= 1e-12 * max(1, np.abs(lam).max() ** 2)
    assert abs(np.linalg.det(lam) - 1) <= 1e-12 * max(1, np.abs(lam).max() ** 4)
    assert lam[0, 0] >= 1 - 1e-12


def test_minkowski_norm_signature():
    assert kin.minkowski_norm(kin.four_vector(2, 1, 0, 0)) == 3
    assert kin.minkowski_norm(kin.four_vector(0, 1, 1, 1)) == -3


def test_boost_zero_is_identity():
    assert np.array_equal(kin.boost_from_velocity((0, 0, 0)), np.eye(4))


def test_boost_x_matrix():
    v = 0.6
    g = 1 / np.sqrt(1 - v * v)
    expected = np.array([[g, -g * v, 0, 0], [-g * v, g, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert np.allclose(kin.boost_x(v), expected, atol=1e-15)
    assert np.allclose(kin.boost_from_velocity((v, 0, 0)), expected, atol=1e-15)


def test_boost_inverse_by_product(rng):
    for _ in range(20):
        v = random_velocity(rng)
        prod = kin.boost_from_velocity(v) @ kin.boost_from_velocity(-v)
        assert np.max(np.abs(prod - np.eye(4))) <= 1e-12 * kin.gamma_factor(np.linalg.norm(v)) ** 2


@given(velocity())
def test_boost_invariants(v):
    lam = kin.boost_from_velocity(v)
    assert_lorentz(lam)
    assert np.array_equal(lam, lam.T)
    g = kin.gamma_factor(np.linalg.norm(v))
    u = np.concatenate(([g], g * v))
    assert np.allclose(lam @ u, [1, 0, 0, 0], atol=1e-12 * g * g)
    assert np.allclose(kin.lorentz_inverse(lam) @ lam, np.eye(4), atol=1e-12 * g * g)


def test_superluminal_rejected():
    for v in [(1, 0, 0), (0.8, 0.7, 0), (np.nan, 0, 0)]:
        with pytest.raises(SuperluminalVelocity):
            kin.boost_from_velocity(v)
    with pytest.raises(SuperluminalVelocity):
        kin.gamma_factor(1.0)
    with pytest.raises(SuperluminalVelocity):
        kin.rapidity_from_speed(1.0)


def test_rapidity_values():
    assert kin.rapidity_from_speed(0.0) == 0.0
    assert abs(kin.rapidity_from_speed(0.8) - 0.5 * np.log(1.8 / 0.2)) <= 1e-15
    assert abs(kin.rapidity_from_speed(0.8) - 1.0986122886681098) <= 1e-12
    for s in np.linspace(0, 0.999, 50):
        u = kin.rapidity_from_speed(s)
        assert abs(kin.speed_from_rapidity(u) - s) <= 1e-14
        assert abs(np.cosh(u) - kin.gamma_factor(s)) <= 1e-12 * kin.gamma_factor(s)


def test_rapidities_add_for_collinear_boosts():
    u1, u2 = 0.4, 1.1
    prod = kin.boost_x(np.tanh(u1)) @ kin.boost_x(np.tanh(u2))
    assert np.allclose(prod, kin.boost_x(np.tanh(u1 + u2)), atol=1e-12)


def test_standard_boost_rest_and_moving():
    assert np.allclose(kin.standard_boost([1, 0, 0, 0], 1.0), np.eye(4))
    p = kin.four_momentum(1.0, (0, 0, 0.8))
    lp = kin.standard_boost(p, 1.0)
    assert np.allclose(lp @ [1, 0, 0, 0], [5 / 3, 0, 0, 4 / 3], atol=1e-14)
    assert abs(kin.minkowski_norm(lp @ [1, 0, 0, 0]) - 1) <= 1e-12


@given(velocity(), st.floats(0.1, 10))
def test_standard_boost_maps_rest_momentum(v, m):
    p = kin.four_momentum(m, v)
    assert np.allclose(kin.standard_boost(p, m) @ [m, 0, 0, 0], p, atol=1e-10 * max(1, p[0]))


def test_off_mass_shell():
    with pytest.raises(OffMassShell):
        kin.standard_boost([1, 0.5, 0, 0], 1.0)
    with pytest.raises(OffMassShell):
        kin.standard_boost([-1, 0, 0, 0], 1.0)
    with pytest.raises(OffMassShell):
        kin.wigner_rotation(np.eye(4), [2, 0, 0, 0], 1.0)


def test_wigner_rotation_of_pure_rotation(rng):
    for _ in range(10):
        r = kin.Rotation3.about(rng.normal(size=3), rng.uniform(0, np.pi))
        p = kin.four_momentum(1.3, random_velocity(rng))
        w = kin.wigner_rotation(kin.rotation_embedding(r), p, 1.3)
        assert w.same_as(r, tol=1e-10)


def test_wigner_rotation_collinear_is_identity():
    p = kin.four_momentum(1.0, (0.3, 0, 0))
    w = kin.wigner_rotation(kin.boost_x(0.7), p, 1.0)
    assert w.angle == 0.0


def test_wigner_rotation_canonical_case():
    p = kin.four_momentum(1.0, (0, 0, 0.8))
    wm = kin.wigner_matrix(kin.boost_x(0.8), p, 1.0)
    assert np.allclose(wm @ [1, 0, 0, 0], [1, 0, 0, 0], atol=1e-10)
    r3 = wm[1:, 1:]
    assert np.allclose(r3.T @ r3, np.eye(3), atol=1e-12)
    assert abs(np.linalg.det(r3) - 1) <= 1e-12
    r = kin.wigner_rotation(kin.boost_x(0.8), p, 1.0)
    assert abs(np.cos(r.angle) - 15 / 17) <= 1e-12
    # rotation axis is -(v x w) = -y for v along +z, w along +x
    assert np.allclose(r.axis, [0, -1, 0], atol=1e-12)
    r_minus = kin.wigner_rotation(kin.boost_x(0.8), kin.four_momentum(1.0, (0, 0, -0.8)), 1.0)
    assert np.allclose(r_minus.axis, [0, 1, 0], atol=1e-12)
    assert abs(r_minus.angle - r.angle) <= 1e-12


def test_perpendicular_angle_values():
    assert kin.wigner_angle_perpendicular(0.0, 0.7) == 0.0
    assert abs(np.cos(kin.wigner_angle_perpendicular(0.8, 0.8)) - 15 / 17) <= 1e-15
    gaps = [np.pi / 2 - kin.wigner_angle_perpendicular(s, s) for s in (0.99, 0.9999, 0.999999)]
    assert gaps[0] > gaps[1] > gaps[2] > 0
    # pi/2 - delta ~ 2/gamma as both speeds approach 1
    assert abs(gaps[2] * kin.gamma_factor(0.999999) / 2 - 1) < 1e-3
    with pytest.raises(SuperluminalVelocity):
        kin.wigner_angle_perpendicular(1.0, 0.5)


def test_perpendicular_angle_monotone_grid():
    g = np.linspace(0, 0.999, 60)
    d = np.array([[kin.wigner_angle_perpendicular(v, w) for w in g] for v in g])
    assert np.all(np.diff(d, axis=0) >= -1e-15)
    assert np.all(np.diff(d, axis=1) >= -1e-15)
    assert d.max() < np.pi / 2


def test_perpendicular_small_angle_precision():
    # leading order: delta ~ v w / 2 for small speeds
    v = w = 1e-5
    assert abs(kin.wigner_angle_perpendicular(v, w) / (v * w / 2) - 1) < 1e-8


def test_general_angle_cases():
    assert kin.wigner_angle_general((0, 0, 0.5), (0, 0, 0)) == 0.0
    assert abs(
        kin.wigner_angle_general((0, 0, 0.8), (0.8, 0, 0)) - kin.wigner_angle_perpendicular(0.8, 0.8)
    ) <= 1e-14
    assert kin.wigner_angle_general((0.3, 0.2, 0), (0.6, 0.4, 0)) <= 1e-7
    assert kin.wigner_angle_general((0.3, 0.2, 0), (-0.6, -0.4, 0)) <= 1e-7
    with pytest.raises(SuperluminalVelocity):
        kin.wigner_angle_general((1, 0, 0), (0, 0, 0))


def test_general_angle_matches_matrix_oracle(rng):
    for _ in range(300):
        v, w = random_velocity(rng), random_velocity(rng)
        m = rng.uniform(0.5, 3)
        r = kin.wigner_rotation(kin.boost_from_velocity(w), kin.four_momentum(m, v), m)
        # observer moving with w applies the active boost -w
        assert abs(r.angle - kin.wigner_angle_general(v, -w)) <= 1e-10


def test_non_collinear_boost_product_not_symmetric():
    prod = kin.boost_from_velocity((0.5, 0, 0)) @ kin.boost_from_velocity((0, 0.5, 0))
    assert np.max(np.abs(prod - prod.T)) > 1e-3
    assert_lorentz(prod)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(-1, 1), st.floats(0, 2 * np.pi))
def test_su2_conjugation(a, b, c, angle):
    axis = np.array([a, b, c]) + [0, 0, 1e-3]
    r = kin.Rotation3.about(axis, angle)
    u = kin.su2_from_rotation(r)
    assert kin.is_su2(u)
    x = np.array([0.3, -1.2, 0.7])
    lhs = u @ kin.sigma_dot(x) @ u.conj().T
    assert np.max(np.abs(lhs - kin.sigma_dot(r.matrix() @ x))) <= 1e-12
    assert np.allclose(kin.rotation_matrix_from_su2(u), r.matrix(), atol=1e-12)


def test_su2_special_values():
    assert np.allclose(kin.su2_from_rotation(kin.Rotation3.identity()), np.eye(2))
    d = 0.7
    c, s = np.cos(d / 2), np.sin(d / 2)
    u_plus = kin.su2_from_rotation(kin.Rotation3([0, -1, 0], d))
    assert np.allclose(u_plus, [[c, s], [-s, c]], atol=1e-15)
    u_minus = kin.su2_from_rotation(kin.Rotation3.about([0, -1, 0], -d))
    assert np.allclose(u_minus, [[c, -s], [s, c]], atol=1e-15)
    # 2 pi is -I in SU(2) but the identity in SO(3)
    u2pi = kin.su2_from_rotation(kin.Rotation3([0, 0, 1], 2 * np.pi))
    assert np.allclose(u2pi, -np.eye(2), atol=1e-15)
    assert np.allclose(kin.rotation_matrix_from_su2(u2pi), np.eye(3), atol=1e-15)


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0.01, 1), st.floats(0, np.pi))
def test_rotation_round_trip(a, b, c, angle):
    r = kin.Rotation3.about([a, b, c], angle)
    back = kin.rotation_from_matrix(r.matrix())
    assert back.same_as(r, tol=1e-9)
    u1 = kin.su2_from_rotation(r)
    u2 = kin.su2_from_rotation(kin.rotation_from_matrix(kin.rotation_matrix_from_su2(u1)))
    assert min(np.abs(u1 - u2).max(), np.abs(u1 + u2).max()) <= 1e-7


def test_rotation_extraction_near_pi():
    r = kin.Rotation3.about([1, 2, 2], np.pi - 1e-9)
    back = kin.rotation_from_matrix(r.matrix())
    assert back.same_as(r, tol=1e-8)
    r = kin.Rotation3([0, 0, 1], np.pi)
    assert kin.rotation_from_matrix(r.matrix()).same_as(r, tol=1e-12)


def test_rotation_requires_unit_axis():
    with pytest.raises(ValueError):
        kin.Rotation3([1, 1, 0], 0.3)


@pytest.mark.parametrize("angle", [2e-9, 6e-8, 1e-6, 1e-3, 0.5, 1.5, 2.5, np.pi - 1e-6])
def test_rotation_extraction_across_angles(angle):
    r = kin.Rotation3.about([0, 1, 1], angle)
    back = kin.rotation_from_matrix(r.matrix())
    assert abs(back.angle - angle) <= 1e-12
    assert np.allclose(back.axis, r.axis, atol=1e-6)
    assert back.same_as(r, tol=1e-12)
