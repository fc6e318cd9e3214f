import numpy as np

from zolldisks.geometry.charts import (
    Chart,
    choose_pole,
    local_from_chart,
    local_to_chart,
    su2_between,
)
from zolldisks.geometry.projective import P1Point, antipodal_array, chordal_p1, hopf
from tests.conftest import random_p1


def test_chart_coordinates_invert(rng):
    chart = Chart.centered_at(random_p1(rng, 1)[0])
    u = random_p1(rng, 200)
    np.testing.assert_allclose(chordal_p1(chart.from_chart(chart.to_chart(u)), u), 0, atol=1e-12)


def test_centre_has_coordinate_zero_and_pole_is_antipodal(rng):
    c = random_p1(rng, 1)[0]
    chart = Chart.centered_at(c)
    assert abs(chart.to_chart(c)) < 1e-14
    np.testing.assert_allclose(chart.pole.sphere(), -hopf(c), atol=1e-12)


def test_antipodal_map_reads_the_same_in_every_chart(rng):
    for center in random_p1(rng, 5):
        chart = Chart.centered_at(center)
        u = random_p1(rng, 100)
        w = chart.to_chart(u)
        w_opposite = chart.to_chart(antipodal_array(u))
        np.testing.assert_allclose(w_opposite, -1 / np.conj(w), rtol=1e-10)


def test_transition_matches_direct_coordinates(rng):
    a, b = (Chart.centered_at(c) for c in random_p1(rng, 2))
    u = random_p1(rng, 50)
    mobius = a.transition_to(b)
    np.testing.assert_allclose(mobius(a.to_chart(u)), b.to_chart(u), rtol=1e-10)


def test_transition_derivative(rng):
    a, b = (Chart.centered_at(c) for c in random_p1(rng, 2))
    mobius = a.transition_to(b)
    w, h = 0.3 - 0.2j, 1e-6
    numeric = (mobius(w + h) - mobius(w - h)) / (2 * h)
    assert abs(numeric - mobius.derivative(w)) < 1e-6


def test_local_charts_agree_with_chart_objects(rng):
    centers = random_p1(rng, 10)
    u = random_p1(rng, 10)
    w = local_to_chart(centers, u)
    for center, point, value in zip(centers, u, w):
        assert abs(Chart.centered_at(center).to_chart(point) - value) < 1e-12
    np.testing.assert_allclose(chordal_p1(local_from_chart(centers, w), u), 0, atol=1e-12)


def test_su2_between_moves_a_to_b(rng):
    a, b = random_p1(rng, 2)
    m = su2_between(a, b)
    np.testing.assert_allclose(m @ np.conj(m.T), np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(m) - 1) < 1e-12
    assert chordal_p1(m @ a, b) < 1e-12


def test_su2_commutes_with_the_antipodal_map(rng):
    a, b = random_p1(rng, 2)
    m = su2_between(a, b)
    u = random_p1(rng, 20)
    image = (m @ u.T).T
    assert np.max(chordal_p1(antipodal_array(image), (m @ antipodal_array(u).T).T)) < 1e-12


def test_rotated_chart_keeps_coordinates(rng):
    chart = Chart.centered_at(random_p1(rng, 1)[0])
    m = su2_between(*random_p1(rng, 2))
    u = random_p1(rng, 20)
    rotated = chart.rotated(m)
    np.testing.assert_allclose(rotated.to_chart((m @ u.T).T), chart.to_chart(u), rtol=1e-10)


def test_choose_pole_prefers_the_emptiest_region():
    samples = np.array([[1.0, 0.0], [1.0, 0.1], [1.0, -0.1j]], dtype=complex)
    samples /= np.linalg.norm(samples, axis=-1, keepdims=True)
    candidates = np.array([[1.0, 0.2], [0.0, 1.0]], dtype=complex)
    pole, clearance = choose_pole(samples, candidates)
    assert pole == P1Point(np.array([0.0, 1.0]))
    assert clearance > 0.9
