import numpy as np
import pytest

from zolldisks.dataflows.config import set_config
from zolldisks.errors import DocilityRequired
from zolldisks.geometry.projective import P1Point, chordal
from zolldisks.solver.continuation import predict, refine_with_growth, solve_disk
from zolldisks.solver.disk import (
    boundary_residual,
    canonical,
    disk_separation,
    kappa,
    round_disk,
    transport,
)
from zolldisks.solver.newton import (
    BoundarySystem,
    newton_refine,
    pin_derivatives,
    predict_base_point,
    shift_base_point,
)
from tests.conftest import random_p1


def test_scale_zero_reproduces_round_disks(rng, generic):
    spec = generic.with_scale(0.0)
    for u in random_p1(rng, 100):
        u0 = P1Point(u)
        disk = solve_disk(spec, u0, K=16, certify=False)
        np.testing.assert_allclose(canonical(disk).coeffs, round_disk(u0, K=16).coeffs, atol=1e-10)
        assert disk.residual < 1e-12


def test_newton_keeps_an_exact_solution(standard):
    disk = round_disk(P1Point(np.array([1.0, 0.0])), K=16)
    refined = newton_refine(disk, standard, 0.0)
    np.testing.assert_array_equal(refined.coeffs, disk.coeffs)
    assert refined.residual < 1e-12


def test_boundary_jacobian_matches_finite_differences(generic):
    disk = round_disk(P1Point(np.array([0.6, 0.8])), K=8)
    system = BoundarySystem(generic.with_scale(0.3), disk.chart, disk.K, 0.0, 1e-6)
    coeffs = disk.coeffs + 0.01 * np.arange(9)
    J = system.jacobian(coeffs)
    h = 1e-7
    for column in (1, 3, 11):
        delta = np.zeros(9, dtype=complex)
        if column <= 8:
            delta[column] = h
        else:
            delta[column - 9] = 1j * h
        numeric = (system.residual(coeffs + delta) - system.residual(coeffs - delta)) / (2 * h)
        np.testing.assert_allclose(J[:, column], numeric, atol=1e-5)


def test_disk_at_partial_scale(generic):
    u0 = P1Point(np.array([1.0, 0.0]))
    disk = solve_disk(generic.with_scale(0.25), u0, K=32)
    assert disk.residual < 1e-9
    assert disk.spec_scale == 0.25
    assert chordal(kappa(disk), disk.p) < 1e-9
    assert boundary_residual(disk, generic.with_scale(0.25)) == pytest.approx(disk.residual)
    assert disk.coeffs[1].imag == pytest.approx(0.0, abs=1e-12)
    assert disk.tail <= 1e-8


def test_solution_is_locally_isolated(generic):
    spec = generic.with_scale(1 / 16)
    disk = solve_disk(spec, P1Point(np.array([1.0, 0.0])), K=32)
    assert disk.residual < 1e-9
    nudged = disk.coeffs.copy()
    nudged[3] += 1e-3
    assert boundary_residual(disk.with_coeffs(nudged), spec) > 1e-5


def test_failing_surface_is_refused(degenerate):
    with pytest.raises(DocilityRequired) as info:
        solve_disk(degenerate, P1Point(np.array([1.0, 0.0])))
    assert info.value.report is not None
    assert not info.value.report.passed


def test_truncation_bounds(standard):
    with pytest.raises(ValueError):
        solve_disk(standard, P1Point(np.array([1.0, 0.0])), K=8)
    set_config({"max_K": 256})
    with pytest.raises(ValueError):
        solve_disk(standard, P1Point(np.array([1.0, 0.0])), K=512)


def test_predict_extrapolates_linearly():
    base = round_disk(P1Point(np.array([1.0, 0.0])), K=16)
    first = base.with_coeffs(base.coeffs, spec_scale=0.1)
    shifted = base.coeffs.copy()
    shifted[2] = 0.01
    second = base.with_coeffs(shifted, spec_scale=0.2)
    guess = predict([first, second], 0.3)
    assert guess.coeffs[2] == pytest.approx(0.02)
    assert guess.coeffs[0] == second.coeffs[0]
    assert predict([second], 0.3) is second


def test_refinement_grows_the_truncation(generic):
    spec = generic.with_scale(0.1)
    start = round_disk(P1Point(np.array([0.0, 1.0])), K=16)
    disk = refine_with_growth(start, spec, 0.1, tail_tol=1e-8, max_K=128)
    assert disk.tail <= 1e-8
    assert disk.residual < 1e-9


@pytest.mark.slow
def test_solution_does_not_depend_on_the_homotopy_step(rng, generic):
    set_config({"newton_tol": 1e-11})
    for u in random_p1(rng, 20):
        u0 = P1Point(u)
        coarse = solve_disk(generic, u0, step=1 / 16, certify=False)
        fine = solve_disk(generic, u0, step=1 / 32, certify=False)
        a, b = canonical(coarse), canonical(fine)
        K = min(a.K, b.K)
        np.testing.assert_allclose(a.coeffs[: K + 1], b.coeffs[: K + 1], atol=1e-8)
        assert disk_separation(a, b) < 1e-8


def test_base_point_shift_is_first_order(generic):
    set_config({"newton_tol": 1e-11})
    spec = generic.with_scale(0.25)
    disk = solve_disk(spec, P1Point(np.array([1.0, 0.0])), K=32)
    derivatives = pin_derivatives(disk, spec)
    np.testing.assert_allclose(derivatives[0][0], 1.0, atol=1e-10)
    np.testing.assert_allclose(derivatives[1][0], 1j, atol=1e-10)

    errors = []
    for h in (1e-2, 5e-3):
        u0 = disk.chart.from_chart(disk.coeffs[0] + h * (0.6 + 0.8j))
        exact = canonical(refine_with_growth(transport(disk, P1Point(u0)), spec, 0.25, 1e-8, 256))
        first_order = canonical(shift_base_point(disk, u0, derivatives))
        errors.append(disk_separation(first_order, exact))
        assert errors[-1] < 0.05 * disk_separation(canonical(disk), exact)
    # halving the shift cuts the first-order error roughly by four
    assert errors[1] < 0.4 * errors[0]


def test_predicted_start_beats_rotation_off_the_round_surface(generic):
    spec = generic.with_scale(0.25)
    disk = solve_disk(spec, P1Point(np.array([1.0, 0.0])), K=32)
    u0 = P1Point(disk.chart.from_chart(disk.coeffs[0] + 0.02j))
    predicted = predict_base_point(disk, spec, u0)
    rotated = transport(disk, u0)
    assert predicted.residual < boundary_residual(rotated, spec)
    assert chordal(kappa(predicted), predicted.p) < 1e-12
    assert newton_refine(predicted, spec, 0.25).residual < 1e-9
