"""Boost matrices, Wigner rotation angles and spinor-representation unitaries."""

import numpy as np
import pytest

from boostlab.errors import NumericalError
from boostlab.kinematics import (
    BoostSpec,
    _rotation_block,
    boost_matrix,
    boost_momentum,
    energy,
    rotation_angle,
    rotation_axis,
    wigner_angle,
    wigner_angle_from_composition,
    wigner_unitaries,
    wigner_unitary,
)

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def test_energy():
    assert energy((0.0, 0.0, 0.0)) == 1.0
    assert energy((3.0, 0.0, -4.0)) == pytest.approx(np.sqrt(26.0), abs=1e-15)


def test_boost_spec_rejects_non_unit_axis():
    with pytest.raises(ValueError):
        BoostSpec(1.0, (0.0, 0.0, 2.0))


def test_boost_matrix_preserves_metric():
    rng = np.random.default_rng(11)
    for _ in range(20):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        lam = boost_matrix(BoostSpec(float(rng.uniform(0.0, 5.0)), tuple(axis)))
        assert np.abs(lam.T @ ETA @ lam - ETA).max() < 1e-11


def test_boost_matrix_identity_at_zero():
    lam = boost_matrix(BoostSpec(0.0))
    assert np.abs(lam - np.eye(4)).max() == 0.0


def test_boost_momentum_along_z():
    p = np.array([1.0, 2.0, 3.0])
    xi = 0.8
    boosted = boost_momentum(BoostSpec(xi), p)
    e = energy(p)
    assert boosted[0] == pytest.approx(1.0, abs=1e-14)
    assert boosted[1] == pytest.approx(2.0, abs=1e-14)
    assert boosted[2] == pytest.approx(e * np.sinh(xi) + 3.0 * np.cosh(xi), abs=1e-12)


def test_boost_momentum_round_trip():
    p = np.array([0.3, -1.2, 2.5])
    there = boost_momentum(BoostSpec(1.7, (0.0, 1.0, 0.0)), p)
    back = boost_momentum(BoostSpec(1.7, (0.0, -1.0, 0.0)), there)
    assert np.abs(back - p).max() < 1e-12


def test_wigner_angle_trivial_cases():
    assert wigner_angle(0.0, 2.0, 1.0) == 0.0
    assert wigner_angle(2.0, 0.0, 1.0) == 0.0
    assert wigner_angle(1.0, 2.0, 0.0) == 0.0


def test_wigner_angle_frozen_anchors():
    # independently derived from the half-angle form; pinned against regressions
    assert wigner_angle(float(np.arcsinh(100.0)), 6.5, 2.967) == pytest.approx(
        2.818658416524842, abs=1e-12
    )
    large = np.degrees(wigner_angle(12.0, 12.0, 3.10))
    assert large == pytest.approx(177.54921479558644, abs=1e-9)
    assert large > 175.0


def test_wigner_angle_monotone_in_each_rapidity():
    xis = np.linspace(0.0, 6.5, 120)
    for theta in (0.4, 1.2, 2.9):
        fixed_second = [wigner_angle(x, 1.5, theta) for x in xis]
        fixed_first = [wigner_angle(1.5, x, theta) for x in xis]
        assert np.diff(fixed_second).min() >= 0.0
        assert np.diff(fixed_first).min() >= 0.0


def test_wigner_angle_matches_composition():
    for xi1, xi2, theta in [(0.5, 1.1, 0.7), (2.0, 0.4, 2.2), (3.0, 3.0, 1.3)]:
        b1 = BoostSpec(xi1, (np.sin(theta), 0.0, np.cos(theta)))
        b2 = BoostSpec(xi2, (0.0, 0.0, 1.0))
        omega, axis = wigner_angle_from_composition(b1, b2)
        assert omega == pytest.approx(wigner_angle(xi1, xi2, theta), abs=1e-11)
        # positive-angle axis points along v1 x v2
        expected = np.cross(b1.velocity, b2.velocity)
        expected /= np.linalg.norm(expected)
        assert np.abs(axis - expected).max() < 1e-9


def test_composition_of_parallel_boosts_has_no_rotation():
    omega, axis = wigner_angle_from_composition(BoostSpec(1.0), BoostSpec(2.0))
    assert omega == pytest.approx(0.0, abs=1e-12)
    assert axis is None


def test_non_rotation_block_rejected():
    # a pure boost is not a rotation, so extracting its rotation must fail
    with pytest.raises(NumericalError):
        _rotation_block(boost_matrix(BoostSpec(1.0)))


def test_wigner_unitaries_unitary_in_bulk():
    rng = np.random.default_rng(23)
    momenta = rng.normal(scale=40.0, size=(200_000, 3))
    for xi in (0.3, 2.0, 6.5):
        u = wigner_unitaries(xi, momenta)
        prod = np.einsum("nik,njk->nij", u, u.conj())
        assert np.abs(prod - np.eye(2)).max() < 1e-11


def test_wigner_unitary_identity_cases():
    assert np.abs(wigner_unitary(0.0, np.array([1.0, 2.0, 3.0])) - np.eye(2)).max() < 1e-15
    # momentum collinear with the boost axis: no rotation, only a phase-free boost
    u = wigner_unitary(2.0, np.array([0.0, 0.0, -5.0]))
    assert rotation_angle(u) == pytest.approx(0.0, abs=1e-15)


def test_spinor_angle_equals_half_angle_formula():
    # rotation angle extracted from the spinor route must match the closed form
    # evaluated at the particle's own rapidity and polar angle
    for p in [np.array([3.0, 0.0, -4.0]), np.array([17.13, 0.0, -98.5]), np.array([0.5, 2.0, 1.0])]:
        theta = float(np.arccos(p[2] / np.linalg.norm(p)))
        for xi in (0.7, 2.0, 6.5):
            from_unitary = rotation_angle(wigner_unitary(xi, p))
            from_formula = wigner_angle(float(np.arcsinh(np.linalg.norm(p))), xi, theta)
            assert from_unitary == pytest.approx(from_formula, abs=1e-12)


def test_rotation_angle_and_axis_extraction():
    n = np.array([2.0, -1.0, 0.0])
    n /= np.linalg.norm(n)
    phi = 1.1
    sigma = np.array(
        [[[0.0, 1.0], [1.0, 0.0]], [[0.0, -1.0j], [1.0j, 0.0]], [[1.0, 0.0], [0.0, -1.0]]]
    )
    u = np.cos(phi / 2.0) * np.eye(2) + 1.0j * np.sin(phi / 2.0) * np.tensordot(n, sigma, axes=1)
    assert rotation_angle(u) == pytest.approx(phi, abs=1e-12)
    axis = rotation_axis(u)
    assert np.abs(axis - n).max() < 1e-12


def test_wigner_axis_orthogonal_to_boost():
    # z-boost acting on momentum p rotates the spin about z cross p
    p = np.array([1.0, 0.0, -3.0])
    axis = rotation_axis(wigner_unitary(1.5, p))
    expected = np.cross([0.0, 0.0, 1.0], p)
    expected = expected / np.linalg.norm(expected)
    assert np.abs(axis - expected).max() < 1e-12


def test_rotation_axis_none_for_identity():
    assert rotation_axis(np.eye(2, dtype=complex)) is None
