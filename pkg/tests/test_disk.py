import numpy as np
import pytest

from zolldisks.errors import ChartOverflow, HolomorphyLoss
from zolldisks.geometry.charts import Chart
from zolldisks.geometry.projective import P1Point, antipodal_array, chordal, hopf
from zolldisks.solver.disk import (
    boundary_residual,
    boundary_series,
    canonical,
    disk_separation,
    gauge_angle,
    gauge_rotate,
    kappa,
    point_at,
    recenter,
    round_disk,
    sphere_boundary,
    transport,
)
from tests.conftest import random_p1


def test_boundary_series_evaluates_the_polynomial():
    coeffs = np.array([0.5, 1.0 + 0.2j, -0.3j, 0.05])
    values = boundary_series(coeffs, 16)
    zeta = np.exp(2j * np.pi * np.arange(16) / 16)
    np.testing.assert_allclose(values, np.polynomial.polynomial.polyval(zeta, coeffs), atol=1e-14)


def test_boundary_series_needs_enough_nodes():
    with pytest.raises(ValueError):
        boundary_series(np.ones(8), 4)


def test_round_disks_solve_the_standard_problem(rng, standard):
    for u in random_p1(rng, 100):
        disk = round_disk(P1Point(u), K=16)
        assert disk.residual < 1e-12
        assert boundary_residual(disk, standard) < 1e-12
        assert chordal(kappa(disk), disk.p) < 1e-12


def test_round_disk_boundary_is_the_great_circle(rng):
    u = P1Point(random_p1(rng, 1)[0])
    boundary = sphere_boundary(round_disk(u, K=16))
    np.testing.assert_allclose(boundary @ u.sphere(), 0, atol=1e-12)


def test_gauge_makes_first_coefficient_positive():
    coeffs = np.array([0.1, 0.3 - 0.4j, 0.2j])
    rotated = gauge_rotate(coeffs, gauge_angle(coeffs))
    assert rotated[1].imag == pytest.approx(0, abs=1e-15)
    assert rotated[1].real == pytest.approx(0.5)
    assert rotated[0] == coeffs[0]


def test_recenter_round_trip(rng, standard):
    u = P1Point(random_p1(rng, 1)[0])
    disk = round_disk(u, K=64)
    # a nearby centre keeps the new pole well outside the disk
    nearby = Chart.centered_at(u.v + 0.2 * antipodal_array(u.v))
    moved, _ = recenter(disk, nearby)
    assert moved.chart is nearby
    assert boundary_residual(moved, standard) < 1e-10
    back = canonical(moved)
    np.testing.assert_allclose(back.coeffs, disk.coeffs, atol=1e-10)


def test_recenter_reports_the_boundary_shift(rng):
    u = P1Point(random_p1(rng, 1)[0])
    disk = round_disk(u, K=64)
    nearby = Chart.centered_at(u.v + 0.2 * antipodal_array(u.v))
    moved, theta = recenter(disk, nearby)
    for tau in (0.0, 1.0, 2.5):
        assert chordal(point_at(disk, tau), point_at(moved, tau - theta)) < 1e-10


def test_recenter_onto_a_chart_with_the_pole_inside_fails(rng):
    u = P1Point(random_p1(rng, 1)[0])
    inside = Chart.centered_at(antipodal_array(u.v))
    with pytest.raises(HolomorphyLoss):
        recenter(round_disk(u, K=32), inside)


def test_samples_near_the_pole_overflow(standard):
    disk = round_disk(P1Point(np.array([1.0, 0.0])), K=16)
    coeffs = disk.coeffs.copy()
    coeffs[1] = 30.0
    with pytest.raises(ChartOverflow):
        boundary_residual(disk.with_coeffs(coeffs), standard)


def test_transport_is_exact_at_scale_zero(rng, standard):
    a, b = (P1Point(u) for u in random_p1(rng, 2))
    moved = transport(round_disk(a, K=16), b)
    assert moved.u0 == b
    assert boundary_residual(moved, standard) < 1e-12
    assert disk_separation(canonical(moved), round_disk(b, K=16)) < 1e-10


def test_resized_pads_and_truncates(rng):
    disk = round_disk(P1Point(random_p1(rng, 1)[0]), K=16)
    assert disk.resized(32).K == 32
    assert disk.resized(32).tail == 0.0
    np.testing.assert_array_equal(disk.resized(32).resized(16).coeffs, disk.coeffs)


def test_points_lie_on_the_unit_sphere(rng):
    disk = round_disk(P1Point(random_p1(rng, 1)[0]), K=16)
    x = hopf(disk.points(0.5 * np.exp(1j * np.linspace(0, 6, 20))))
    np.testing.assert_allclose(np.linalg.norm(x, axis=-1), 1.0, atol=1e-12)
