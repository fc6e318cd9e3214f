import numpy as np
import pytest

from zolldisks.errors import DegenerateTangency, NearConic
from zolldisks.geometry.projective import (
    P1Point,
    P2Point,
    TangentFrame2,
    antipodal,
    antipodal_array,
    chordal,
    chordal_p1,
    chordal_p2,
    conic,
    conic_value,
    conj_c,
    hopf,
    inverse_hopf,
    pi_map,
    pi_raw,
    projective_transform,
    tangent_lines_through,
    upsilon_im_abs,
)
from zolldisks.surface.docility import standard_rp2_frames
from tests.conftest import random_p1


def test_pi_map_is_symmetric(rng):
    u, v = random_p1(rng, 1000), random_p1(rng, 1000)
    for a, b in zip(u[:50], v[:50]):
        assert chordal(pi_map(P1Point(a), P1Point(b)), pi_map(P1Point(b), P1Point(a))) < 1e-12


def test_conic_pulls_back_to_squared_determinant(rng):
    u, v = random_p1(rng, 10_000), random_p1(rng, 10_000)
    raw = pi_raw(u, v)
    det = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    q_raw = np.sum(raw * raw, axis=-1)
    np.testing.assert_allclose(np.abs(q_raw), np.abs(det) ** 2, atol=1e-12)
    # the normalized representative has |q| = d^2 / (2 - d^2)
    d2 = np.abs(det) ** 2
    np.testing.assert_allclose(np.abs(conic(raw)), d2 / (2 - d2), atol=1e-12)


def test_diagonal_lands_on_the_conic(rng):
    for u in random_p1(rng, 20):
        assert abs(conic_value(pi_map(P1Point(u), P1Point(u)))) < 1e-12


def test_antipodal_pairs_are_real_points(rng):
    for u in random_p1(rng, 200):
        z = pi_map(P1Point(u), antipodal(P1Point(u)))
        assert chordal(z, conj_c(z)) < 1e-10


def test_antipodal_is_minus_identity_on_the_sphere(rng):
    u = random_p1(rng, 100)
    for a in u:
        np.testing.assert_allclose(antipodal(P1Point(a)).sphere(), -hopf(a), atol=1e-12)


def test_chordal_distance_is_half_the_sphere_distance(rng):
    u, w = random_p1(rng, 500), random_p1(rng, 500)
    np.testing.assert_allclose(
        chordal_p1(u, w), np.linalg.norm(hopf(u) - hopf(w), axis=-1) / 2, atol=1e-12
    )


def test_chordal_resolves_tiny_distances():
    u = np.array([1.0, 0.0], dtype=complex)
    w = np.array([1.0, 1e-10], dtype=complex)
    assert chordal_p1(u, w) == pytest.approx(1e-10, rel=1e-6)


def test_inverse_hopf_inverts_hopf(rng):
    x = hopf(random_p1(rng, 500))
    np.testing.assert_allclose(hopf(inverse_hopf(x)), x, atol=1e-12)


def test_points_compare_up_to_phase():
    u = P1Point(np.array([1.0, 2.0j]))
    assert u == P1Point(np.exp(0.7j) * np.array([1.0, 2.0j]))
    assert u != P1Point(np.array([1.0, 2.0]))


def test_zero_vector_is_rejected():
    with pytest.raises(ValueError):
        P1Point(np.zeros(2))


def test_tangent_lines_pass_through_the_point_and_touch_q(rng):
    for _ in range(50):
        p = P2Point(rng.normal(size=3) + 1j * rng.normal(size=3))
        if abs(conic_value(p)) < 1e-3:
            continue
        first, second = tangent_lines_through(p)
        for line in (first, second):
            assert abs(np.dot(line.a, p.v)) < 1e-10
            assert abs(conic_value(line.tangency_point)) < 1e-10
            assert abs(np.dot(line.a, line.a)) < 1e-10
        assert chordal(first.tangency_point, second.tangency_point) > 1e-6


def test_point_on_q_has_no_tangent_pair():
    with pytest.raises(DegenerateTangency):
        tangent_lines_through(P2Point(np.array([1.0, 1.0j, 0.0])))


def test_upsilon_vanishes_on_the_standard_rp2():
    for frame in standard_rp2_frames(100, seed=3):
        assert upsilon_im_abs(frame) < 1e-12


def test_upsilon_refuses_points_near_q():
    z = np.array([1.0, 1.0j, 0.0]) / np.sqrt(2)
    frame = TangentFrame2(P2Point(z), np.array([0, 0, 1.0]), np.array([1.0, -1.0j, 0]) / np.sqrt(2))
    with pytest.raises(NearConic):
        upsilon_im_abs(frame)


def test_real_projective_maps_keep_rp2_lagrangian(rng):
    matrix = rng.normal(size=(3, 3)) + 3 * np.eye(3)
    for frame in standard_rp2_frames(50, seed=1):
        image = projective_transform(matrix, frame)
        if abs(conic_value(image.base)) < 1e-3:
            continue
        assert upsilon_im_abs(image) < 1e-9


def test_frames_must_span_two_real_directions():
    z = P2Point(np.array([1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        TangentFrame2(z, np.array([0, 1.0, 0]), np.array([0, 2.0, 0]))


def test_branched_cover_identities_over_many_pairs(rng):
    u, v = random_p1(rng, 10_000), random_p1(rng, 10_000)
    assert np.max(chordal_p2(pi_raw(u, v), pi_raw(v, u))) < 1e-12

    det = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    q_raw = np.sum(pi_raw(u, v) ** 2, axis=-1)
    assert np.max(np.abs(np.abs(q_raw) - np.abs(det) ** 2)) < 1e-12

    real = pi_raw(u, antipodal_array(u))
    assert np.max(chordal_p2(real, np.conj(real))) < 1e-10
