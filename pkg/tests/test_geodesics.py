import numpy as np
import pytest

from zolldisks.dataflows.config import get_config, set_config
from zolldisks.dataflows.spec_files import standard_spec
from zolldisks.geometry.projective import P1Point, chordal_p1
from zolldisks.moduli.geodesics import (
    DISK_PROVIDERS,
    FiberEquation,
    exact_disk,
    interpolated_disk,
    membership_errors,
    min_nonadjacent_separation,
    round_fiber_deviation,
    route_to_provider,
    trace_geodesic,
)
from zolldisks.moduli.sweep import sweep
from zolldisks.solver.continuation import solve_disk
from zolldisks.solver.disk import boundary_residual, canonical, point_at


@pytest.fixture(scope="module")
def round_grid():
    return sweep(standard_spec(scale=0.0), n=64, K=16, seed=0)


def test_route_to_provider():
    assert route_to_provider("exact") is exact_disk
    assert route_to_provider("interpolated") is interpolated_disk
    assert route_to_provider() is DISK_PROVIDERS["exact"]
    with pytest.raises(ValueError):
        route_to_provider("spline")


def test_interpolated_disk_is_exact_at_scale_zero(round_grid, standard):
    u0 = P1Point(np.array([0.3 + 0.1j, 0.9]))
    warm = round_grid.nearest(u0)[0]
    disk = interpolated_disk(standard, u0.v, warm, round_grid)
    assert disk.residual < 1e-10
    assert chordal_p1(disk.points(0.0), u0.v) < 1e-12


def test_round_geodesic_is_a_great_circle(round_grid, standard):
    u = P1Point(np.array([1.0, 0.0]))
    geodesic = trace_geodesic(standard, round_grid, u)
    assert geodesic.closed
    assert geodesic.closure_gap < 1e-4
    assert round_fiber_deviation(geodesic) < 1e-5
    # a great circle of S^2 has chordal length pi in CP^1
    assert geodesic.arclength == pytest.approx(np.pi, rel=1e-2)
    assert min_nonadjacent_separation(geodesic) > 0
    assert np.max(membership_errors(standard, geodesic, round_grid)) < 1e-6


def test_trace_directions_agree(round_grid, standard):
    u = P1Point(np.array([0.6, 0.8j]))
    forward = trace_geodesic(standard, round_grid, u, direction=1)
    backward = trace_geodesic(standard, round_grid, u, direction=-1)
    assert forward.closed and backward.closed
    assert forward.arclength == pytest.approx(backward.arclength, rel=1e-2)
    assert round_fiber_deviation(backward) < 1e-5


def test_backward_trace_covers_the_same_fiber(round_grid, standard):
    u = P1Point(np.array([0.6, 0.8j]))
    forward = trace_geodesic(standard, round_grid, u, direction=1)
    backward = trace_geodesic(standard, round_grid, u, direction=-1)
    assert np.max(membership_errors(standard, backward, round_grid)) < 1e-6
    distances = chordal_p1(forward.u0s[:, None, :], backward.u0s[None, :, :])
    hausdorff = max(np.max(np.min(distances, axis=1)), np.max(np.min(distances, axis=0)))
    assert hausdorff < get_config()["geodesic_step"]


LABELS = [
    np.array([1.0, 0.0]),
    np.array([0.6, 0.8j]),
    np.array([1.0, 1.0]) / np.sqrt(2),
]


@pytest.fixture(scope="module")
def round_traces(round_grid):
    spec = standard_spec(scale=0.0)
    return [trace_geodesic(spec, round_grid, P1Point(label)) for label in LABELS]


def test_distinct_round_geodesics_intersect(round_traces):
    for i, first in enumerate(round_traces):
        for second in round_traces[i + 1 :]:
            # each curve crosses the great circle orthogonal to the other's label
            height = first.sphere_points() @ second.z_label.sphere()
            assert height.min() < 0 < height.max()
            height = second.sphere_points() @ first.z_label.sphere()
            assert height.min() < 0 < height.max()


def test_linearized_fiber_jacobian_matches_resolved_disks(generic):
    set_config({"newton_tol": 1e-11})
    spec = generic.with_scale(0.25)
    disk = canonical(solve_disk(spec, P1Point(np.array([0.6, 0.8])), K=32))
    tau = 0.7
    h = 1e-5
    equation = FiberEquation(spec, None, point_at(disk, tau), exact_disk, h)
    base, y = disk.u0.v, np.array([0.0, 0.0, tau])

    g, jacobian = equation.linearize(base, y, disk)
    assert np.linalg.norm(g) < 1e-10
    assert np.linalg.matrix_rank(jacobian) == 2

    columns = []
    for shift in (h, 1j * h):
        g_shift, _ = equation.value(equation.disk_at(base, shift, disk), tau)
        columns.append((g_shift - complex(*g)) / h)
    columns = np.array(columns)
    np.testing.assert_allclose(jacobian[:, :2], np.vstack([columns.real, columns.imag]), atol=1e-3)
