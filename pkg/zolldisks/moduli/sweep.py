"""Sweeps of the moduli space: one disk per point of a Fibonacci lattice on CP^1."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree
from tqdm import tqdm

from zolldisks.dataflows.config import get_config, set_config
from zolldisks.errors import DocilityRequired, KappaMismatch, SolverFailure
from zolldisks.geometry.projective import P1Point, chordal_p1, chordal_p2, fibonacci_points
from zolldisks.solver.continuation import refine_with_growth, solve_disk
from zolldisks.solver.disk import DiskSolution, boundary_residual, kappa, transport
from zolldisks.solver.newton import predict_base_point
from zolldisks.surface.docility import check_docility
from zolldisks.surface.spec import SurfaceSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModuliGrid:
    """Converged disks indexed by their base points u0 (the moduli point is Pi(u0, u0))."""

    spec_hash: str
    solutions: Tuple[DiskSolution, ...]
    K: int
    seed: Optional[int] = None

    def __len__(self):
        return len(self.solutions)

    @property
    def u0s(self) -> np.ndarray:
        return np.stack([d.u0.v for d in self.solutions])

    @cached_property
    def tree(self) -> cKDTree:
        return cKDTree(np.stack([d.u0.sphere() for d in self.solutions]))

    def nearest(self, u: P1Point, k: int = 1) -> List[DiskSolution]:
        _, index = self.tree.query(u.sphere(), k=k)
        return [self.solutions[i] for i in np.atleast_1d(index)]


def warm_start(neighbour: DiskSolution, spec: SurfaceSpec, u0: P1Point) -> DiskSolution:
    """The better of the rotated neighbour and its first-order shift along the base point."""
    rotated = transport(neighbour, u0)
    rotated = replace(rotated, residual=boundary_residual(rotated, spec.with_scale(neighbour.spec_scale)))
    try:
        shifted = predict_base_point(neighbour, spec, u0)
    except (SolverFailure, np.linalg.LinAlgError, ValueError) as exc:
        logger.debug("no linear predictor at u0=%s (%s)", u0, exc)
        return rotated
    return shifted if shifted.residual < rotated.residual else rotated


def _warm_solve(task) -> DiskSolution:
    spec, neighbour, u0, config = task
    set_config(config)
    try:
        return refine_with_growth(
            warm_start(neighbour, spec, u0), spec, spec.scale, config["tail_tol"], config["max_K"]
        )
    except SolverFailure as exc:
        logger.warning("warm start failed at u0=%s (%s); running full continuation", u0, exc)
        return solve_disk(spec, u0, K=neighbour.K, certify=False)


def _chunks(items: Sequence, size: int):
    for start in range(0, len(items), size):
        yield items[start : start + size]


def sweep(
    spec: SurfaceSpec,
    n: int,
    K: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    certify: bool = True,
    progress: bool = False,
) -> ModuliGrid:
    """Solve the disk through every point of an n-point lattice.

    The lattice point first in order is solved by full continuation; the rest
    are taken in order of distance from it, in fixed-size chunks, each point
    warm-started from the nearest disk of the earlier chunks. The result does
    not depend on the worker count.
    """
    config = get_config()
    K = config["K"] if K is None else K
    workers = config["workers"] if workers is None else workers
    if n < 16:
        raise ValueError(f"a sweep needs at least 16 points, got {n}")

    if certify:
        report = check_docility(spec)
        if not report.passed:
            raise DocilityRequired(
                f"surface fails docility: {', '.join(report.failures)}", report=report
            )

    lattice = fibonacci_points(n, seed)
    order = np.argsort(chordal_p1(lattice, lattice[0][None, :]))
    points = [P1Point(lattice[i]) for i in order]

    solved = [solve_disk(spec, points[0], K=K, certify=False)]
    chunks = list(_chunks(points[1:], config["sweep_chunk"]))
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for chunk in tqdm(chunks, desc="sweep", unit="chunk", disable=not progress):
            tree = cKDTree(np.stack([d.u0.sphere() for d in solved]))
            _, nearest = tree.query(np.stack([u.sphere() for u in chunk]))
            tasks = [(spec, solved[j], u, config) for j, u in zip(nearest, chunk)]
            if executor is None:
                solved.extend(map(_warm_solve, tasks))
            else:
                solved.extend(executor.map(_warm_solve, tasks))
    finally:
        if executor is not None:
            executor.shutdown()

    grid = ModuliGrid(spec.spec_hash(), tuple(solved), K, seed)
    error = kappa_check(grid)
    logger.info("sweep of %d disks done; kappa error %.3e", len(grid), error)
    if not error <= config["kappa_tol"]:
        raise KappaMismatch(f"kappa check failed on the sweep grid: error {error:.3e}")
    return grid


def kappa_check(grid: ModuliGrid, injectivity_tol: float = 1e-6) -> float:
    """Max distance between Pi(ch(0), ch(0)) and the stored p; +inf if two entries share p."""
    error = max(
        float(chordal_p2(kappa(d).v, d.p.v)) for d in grid.solutions
    )
    ps = np.stack([d.p.v for d in grid.solutions])
    distances = chordal_p2(ps[:, None, :], ps[None, :, :])
    np.fill_diagonal(distances, np.inf)
    if np.min(distances) <= injectivity_tol:
        logger.warning(
            "kappa is not injective at lattice scale: min separation %.3e", np.min(distances)
        )
        return float("inf")
    return error


def grid_summary(grid: ModuliGrid) -> Dict[str, float]:
    residuals = [d.residual for d in grid.solutions]
    return {
        "disks": len(grid),
        "max_residual": float(np.max(residuals)),
        "max_K": int(max(d.K for d in grid.solutions)),
    }
