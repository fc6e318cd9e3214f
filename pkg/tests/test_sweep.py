import sys

import numpy as np
import pytest

from zolldisks.dataflows.grid_files import load_grid, save_grid
from zolldisks.dataflows.spec_files import standard_spec
from zolldisks.errors import DocilityRequired, KappaMismatch, SpecFileError
from zolldisks.geometry.projective import P1Point, chordal_p1, fibonacci_points
from zolldisks.moduli.sweep import ModuliGrid, grid_summary, kappa_check, sweep, warm_start


@pytest.fixture(scope="module")
def round_grid():
    return sweep(standard_spec(scale=0.0), n=16, K=16, seed=7)


def test_round_grid_is_exact(round_grid):
    assert len(round_grid) == 16
    assert max(d.residual for d in round_grid.solutions) < 1e-12
    assert kappa_check(round_grid) < 1e-12
    summary = grid_summary(round_grid)
    assert summary["disks"] == 16
    assert summary["max_K"] == 16


def test_every_lattice_point_is_solved(round_grid):
    lattice = fibonacci_points(16, 7)
    distances = chordal_p1(round_grid.u0s[:, None, :], lattice[None, :, :])
    assert np.all(np.min(distances, axis=1) < 1e-12)
    assert np.all(np.min(distances, axis=0) < 1e-12)


def test_sweep_is_deterministic(round_grid):
    again = sweep(standard_spec(scale=0.0), n=16, K=16, seed=7)
    for a, b in zip(round_grid.solutions, again.solutions):
        np.testing.assert_array_equal(a.u0.v, b.u0.v)
        np.testing.assert_array_equal(a.coeffs, b.coeffs)


def test_sweep_bounds(standard, degenerate):
    with pytest.raises(ValueError):
        sweep(standard, n=8, K=16)
    with pytest.raises(DocilityRequired):
        sweep(degenerate, n=16, K=16)


def test_nearest(round_grid):
    target = round_grid.solutions[5]
    assert round_grid.nearest(P1Point(target.u0.v))[0] is target
    assert len(round_grid.nearest(P1Point(target.u0.v), k=3)) == 3


def test_kappa_check_flags_repeated_points(round_grid):
    repeated = ModuliGrid(
        round_grid.spec_hash, round_grid.solutions + round_grid.solutions[:1], round_grid.K
    )
    assert kappa_check(repeated) == float("inf")


def test_grid_round_trip(round_grid, tmp_path, standard, generic):
    directory = save_grid(round_grid, tmp_path / "grid")
    assert (directory / "index.csv").exists()
    loaded = load_grid(directory, standard)
    assert len(loaded) == len(round_grid)
    assert loaded.seed == 7
    assert loaded.K == 16
    for a, b in zip(round_grid.solutions, loaded.solutions):
        np.testing.assert_array_equal(a.coeffs, b.coeffs)
        np.testing.assert_allclose(a.u0.v, b.u0.v, atol=1e-15)
    with pytest.raises(SpecFileError):
        load_grid(directory, generic)


def test_missing_grid(tmp_path):
    with pytest.raises(SpecFileError):
        load_grid(tmp_path)


def test_sweep_refuses_an_inconsistent_grid(monkeypatch, standard):
    monkeypatch.setattr(sys.modules["zolldisks.moduli.sweep"], "kappa_check", lambda grid: float("inf"))
    with pytest.raises(KappaMismatch):
        sweep(standard, n=16, K=16, seed=7)


def test_warm_start_prefers_rotation_on_the_round_surface(round_grid, standard):
    neighbour = round_grid.solutions[0]
    u0 = round_grid.solutions[1].u0
    start = warm_start(neighbour, standard, u0)
    assert start.residual < 1e-12
    assert start.u0 is u0
