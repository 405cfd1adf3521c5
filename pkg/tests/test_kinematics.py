import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorentz_entanglement.errors import DomainError
from lorentz_entanglement.kinematics import (
    FourMomentum, PolarMomentum, SpinRotation, beta_max, boost, boosted_energy,
    rapidity_for_momentum, rotate_momentum, wigner_limit, wigner_rotation)

from oracles import boost_4x4, paper_alpha_beta, sl2c_wigner, u_matrix

momenta = st.floats(0.0, 50.0)
azimuth = st.floats(0.0, 2 * math.pi, exclude_max=True)
polar = st.floats(0.0, math.pi)
masses = st.floats(0.1, 10.0)
rapidities = st.floats(0.0, 20.0)


def test_rapidity_at_rest():
    assert np.array_equal(rapidity_for_momentum([0, 0, 0], 1.0), np.zeros(3))


@pytest.mark.parametrize("p3, m", [((0, 0, 1), 1.0), ((3, 0, 0), 2.0), ((0.3, -1.2, 0.7), 0.5)])
def test_rapidity_boosts_rest_frame_to_momentum(p3, m):
    xi = rapidity_for_momentum(p3, m)
    mag = np.linalg.norm(xi)
    assert mag == pytest.approx(math.asinh(np.linalg.norm(p3) / m), rel=1e-14)
    # boost (m, 0) along the rapidity direction with the 4x4 oracle
    n = xi / mag
    e = m * math.cosh(mag)
    assert np.allclose(m * math.sinh(mag) * n, p3, atol=1e-13)
    assert e == pytest.approx(math.sqrt(m * m + np.dot(p3, p3)), rel=1e-14)


def test_rapidity_value_unit_momentum():
    assert rapidity_for_momentum([0, 0, 1], 1.0)[2] == pytest.approx(0.881373587019543, abs=1e-12)


def test_rapidity_rejects_bad_mass():
    with pytest.raises(DomainError):
        rapidity_for_momentum([1, 0, 0], 0.0)


def test_boost_rest_particle_by_rapidity_of_q():
    m, q = 1.5, 2.0
    out = boost(FourMomentum.at_rest(m), math.asinh(q / m))
    assert out.pz == pytest.approx(q, rel=1e-14)
    assert out.e == pytest.approx(math.hypot(q, m), rel=1e-14)


def test_identity_boost():
    k = FourMomentum(0.3, -0.2, 1.1, 1.0)
    assert boost(k, 0.0) == k


def test_boost_matches_4x4_matrix():
    k = FourMomentum(0.0, 0.0, 1.0, 1.0)
    out = boost(k, 1.0)
    assert out.e == pytest.approx(math.sqrt(2) * math.cosh(1) + math.sinh(1), rel=1e-14)
    ref = boost_4x4(k.e, k.p3, 1.0)
    assert np.allclose(out.components, ref, rtol=1e-14)


@settings(max_examples=300, deadline=None)
@given(p=momenta, th=azimuth, ph=polar, m=masses, xi=rapidities)
def test_boost_preserves_mass(p, th, ph, m, xi):
    k = PolarMomentum(p, th, ph, m).to_four_momentum()
    out = boost(k, xi)
    assert abs(out.invariant_mass_squared() - m * m) <= 1e-10 * m * m
    assert out.e == pytest.approx(boosted_energy(PolarMomentum(p, th, ph, m), xi), rel=1e-12)


def test_from_components_rejects_spacelike():
    with pytest.raises(DomainError):
        FourMomentum.from_components(1.0, 2.0, 0.0, 0.0)
    k = FourMomentum.from_components(math.sqrt(5.0), 1.0, 0.0, 1.0)
    assert k.m == pytest.approx(math.sqrt(3.0), rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(p=st.floats(1e-3, 50.0), th=azimuth, ph=st.floats(1e-6, math.pi - 1e-6), m=masses)
def test_polar_round_trip(p, th, ph, m):
    back = PolarMomentum.from_four_momentum(PolarMomentum(p, th, ph, m).to_four_momentum())
    assert back.p == pytest.approx(p, rel=1e-12)
    assert back.phi == pytest.approx(ph, rel=1e-12, abs=1e-12)
    dth = (back.theta - th + math.pi) % (2 * math.pi) - math.pi
    assert abs(dth) < 1e-9


def test_polar_theta_normalised_on_axis():
    assert PolarMomentum.from_four_momentum(FourMomentum(0, 0, -2.0, 1.0)).theta == 0.0
    assert PolarMomentum.from_four_momentum(FourMomentum(0, 0, -2.0, 1.0)).phi == math.pi


def test_boosted_energy_special_cases():
    k = PolarMomentum(1.3, 0.2, 0.7, 1.0)
    assert boosted_energy(k, 0.0) == pytest.approx(k.e, rel=1e-15)
    k = PolarMomentum(1.3, 0.2, math.pi / 2, 1.0)
    assert boosted_energy(k, 2.0) == pytest.approx(k.e * math.cosh(2.0), rel=1e-14)
    k = PolarMomentum(1.0, 0.0, 0.0, 1.0)
    assert boosted_energy(k, 1.0) == pytest.approx(math.sqrt(2) * math.cosh(1) + math.sinh(1), rel=1e-14)


def test_wigner_identity_without_boost():
    r = wigner_rotation(PolarMomentum(2.0, 1.0, 1.0, 1.0), 0.0)
    assert (r.alpha, r.beta) == pytest.approx((1.0, 0.0), abs=1e-15)


@pytest.mark.parametrize("p", [0.1, 1.0, 7.0, 300.0])
@pytest.mark.parametrize("xi", [0.3, 2.0, 15.0])
@pytest.mark.parametrize("phi", [0.0, math.pi])
def test_collinear_boost_is_identity(p, xi, phi):
    u = wigner_rotation(PolarMomentum(p, 0.0, phi, 1.0), xi).matrix
    assert np.abs(u - np.eye(2)).max() < 1e-12


def test_slow_particle_gets_no_rotation():
    r = wigner_rotation(PolarMomentum(1e-8, 0.4, 1.0, 1.0), 5.0)
    assert abs(r.alpha - 1) < 1e-6 and abs(r.beta) < 1e-6


@settings(max_examples=300, deadline=None)
@given(p=momenta, th=azimuth, ph=polar, m=masses, xi=rapidities)
def test_wigner_is_su2(p, th, ph, m, xi):
    r = wigner_rotation(PolarMomentum(p, th, ph, m), xi)
    assert r.unitarity_defect() < 1e-12
    assert r.alpha >= 0 and r.beta >= 0


@settings(max_examples=200, deadline=None)
@given(p=st.floats(0.0, 10.0), th=azimuth, ph=polar, xi=st.floats(-6.0, 6.0))
def test_wigner_matches_sl2c_composition(p, th, ph, xi):
    """The closed form equals L(Lambda p)^-1 Lambda L(p), phase convention included."""
    k = PolarMomentum(p, th, ph, 1.0)
    ref = sl2c_wigner(k.to_four_momentum().p3, xi)
    assert np.abs(wigner_rotation(k, xi).matrix - ref).max() < 1e-10


@settings(max_examples=200, deadline=None)
@given(p=st.floats(0.0, 10.0), ph=polar, xi=st.floats(0.0, 8.0))
def test_wigner_matches_literal_formula(p, ph, xi):
    a, b = paper_alpha_beta(p, ph, xi)
    r = wigner_rotation(PolarMomentum(p, 0.0, ph, 1.0), xi)
    assert r.alpha == pytest.approx(a, abs=1e-12)
    assert r.beta == pytest.approx(b, abs=1e-12)


def test_wigner_limit_at_rest():
    assert wigner_limit(PolarMomentum(0.0, 0.0, 1.0, 1.0)) == pytest.approx((1.0, 0.0))


def test_wigner_limit_perpendicular_unit_momentum():
    _, b = wigner_limit(PolarMomentum(1.0, 0.0, math.pi / 2, 1.0))
    assert b == pytest.approx(1 / math.sqrt(2 * (math.sqrt(2) + 1) * math.sqrt(2)), rel=1e-14)
    assert wigner_rotation(PolarMomentum(1.0, 0.0, math.pi / 2, 1.0), 40.0).beta == pytest.approx(b, abs=1e-10)


@settings(max_examples=300, deadline=None)
@given(p=momenta, th=azimuth, ph=polar, m=masses)
def test_limit_is_large_rapidity_value(p, th, ph, m):
    k = PolarMomentum(p, th, ph, m)
    a_inf, b_inf = wigner_limit(k)
    assert abs(a_inf ** 2 + b_inf ** 2 - 1) < 1e-12
    r = wigner_rotation(k, 40.0)
    assert abs(r.alpha - a_inf) < 1e-10 and abs(r.beta - b_inf) < 1e-10


def test_beta_max_values():
    assert beta_max(0.0) == 0.0
    assert beta_max(1.0) == pytest.approx(1 / (1 + math.sqrt(2)), abs=1e-12)
    assert beta_max(1e6) > 0.999998


def test_beta_max_is_max_over_polar_angle():
    phi = np.linspace(0, np.pi, 100_000)
    from lorentz_entanglement.kinematics import wigner_limit_coefficients
    _, b = wigner_limit_coefficients(1.0, np.cos(phi), 1.0, np.sin(phi))
    assert b.max() == pytest.approx(beta_max(1.0), abs=1e-6)


def test_beta_max_strictly_increasing():
    grid = np.geomspace(0.1, 100, 200)
    assert np.all(np.diff(beta_max(grid)) > 0)


def test_beta_max_rejects_negative():
    with pytest.raises(DomainError):
        beta_max(-1.0)


@pytest.mark.parametrize("gamma", [0.3, 1.7, 4.0])
def test_rotation_about_boost_axis_only_shifts_azimuth(gamma):
    k = FourMomentum(0.4, -1.1, 0.8, 1.0)
    rz = np.array([[math.cos(gamma), -math.sin(gamma), 0], [math.sin(gamma), math.cos(gamma), 0], [0, 0, 1]])
    k2 = PolarMomentum.from_four_momentum(rotate_momentum(k, rz))
    k1 = PolarMomentum.from_four_momentum(k)
    r1, r2 = wigner_rotation(k1, 2.5), wigner_rotation(k2, 2.5)
    assert (r1.alpha, r1.beta) == pytest.approx((r2.alpha, r2.beta), abs=1e-14)
    d = (r2.theta - r1.theta - gamma + math.pi) % (2 * math.pi) - math.pi
    assert abs(d) < 1e-12


def test_general_rotation_then_boost_matches_sl2c():
    rng = np.random.default_rng(7)
    from scipy.spatial.transform import Rotation
    for _ in range(20):
        rot = Rotation.random(random_state=rng).as_matrix()
        k = rotate_momentum(FourMomentum(*rng.normal(size=3), 1.0), rot)
        ref = sl2c_wigner(k.p3, 1.3)
        assert np.abs(wigner_rotation(PolarMomentum.from_four_momentum(k), 1.3).matrix - ref).max() < 1e-10


def test_spin_rotation_matrix_layout():
    u = SpinRotation(0.6, 0.8, 0.5).matrix
    assert np.allclose(u, u_matrix(0.6, 0.8, 0.5))
    assert np.allclose(u @ u.conj().T, np.eye(2))


def test_negative_rapidity_inverts_rotation():
    k = FourMomentum(0.7, 0.2, -0.4, 1.0)
    u = wigner_rotation(PolarMomentum.from_four_momentum(k), 3.0).matrix
    k2 = boost(k, 3.0)
    v = wigner_rotation(PolarMomentum.from_four_momentum(k2), -3.0).matrix
    assert np.abs(v @ u - np.eye(2)).max() < 1e-13


def test_rapidity_ceiling():
    with pytest.raises(DomainError):
        boost(FourMomentum.at_rest(1.0), 701.0)
    r = wigner_rotation(PolarMomentum(1.0, 0.0, 1.0, 1.0), 700.0)
    assert np.isfinite(r.alpha) and np.isfinite(r.beta)
