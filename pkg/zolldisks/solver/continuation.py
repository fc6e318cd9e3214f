"""Homotopy continuation in the surface scale, from the round disk to the target surface."""

import logging
from typing import List, Optional

from zolldisks.dataflows.config import get_config
from zolldisks.errors import ContinuationStuck, DocilityRequired, NoConvergence, SolverFailure
from zolldisks.geometry.projective import P1Point
from zolldisks.surface.docility import check_docility
from zolldisks.surface.spec import SurfaceSpec
from .disk import DiskSolution, round_disk
from .newton import newton_refine

logger = logging.getLogger(__name__)


def predict(history: List[DiskSolution], t: float) -> DiskSolution:
    """Secant extrapolation through the last two solutions when they share chart and size."""
    last = history[-1]
    if len(history) < 2:
        return last
    prev = history[-2]
    same_chart = prev.chart.pole == last.chart.pole and prev.K == last.K
    if not same_chart or last.spec_scale == prev.spec_scale:
        return last
    slope = (t - last.spec_scale) / (last.spec_scale - prev.spec_scale)
    coeffs = last.coeffs + slope * (last.coeffs - prev.coeffs)
    coeffs[0] = last.coeffs[0]
    return last.with_coeffs(coeffs)


def refine_with_growth(
    guess: DiskSolution, spec: SurfaceSpec, t: float, tail_tol: float, max_K: int
) -> DiskSolution:
    """newton_refine, doubling K while the spectral tail is unresolved."""
    disk = guess
    while True:
        try:
            disk = newton_refine(disk, spec, t)
        except NoConvergence:
            if disk.tail <= tail_tol or disk.K >= max_K:
                raise
            logger.info("doubling K to %d at t=%.4g after a stalled correction", 2 * disk.K, t)
            disk = disk.resized(2 * disk.K)
            continue
        if disk.tail <= tail_tol:
            return disk
        if disk.K >= max_K:
            raise NoConvergence(
                f"spectral tail {disk.tail:.3e} unresolved at K={disk.K}", u0=disk.u0
            )
        logger.info("doubling K to %d at t=%.4g (tail %.3e)", 2 * disk.K, t, disk.tail)
        disk = disk.resized(2 * disk.K)


def solve_disk(
    spec: SurfaceSpec,
    u0: P1Point,
    K: Optional[int] = None,
    step: Optional[float] = None,
    certify: bool = True,
) -> DiskSolution:
    """The holomorphic disk through Pi(u0, u0) with boundary on N.

    Continuation runs from the round disk at scale 0 to spec.scale; steps are
    halved after a failed correction and grown back after a success.
    """
    config = get_config()
    K = config["K"] if K is None else K
    initial_step = config["homotopy_step"] if step is None else step
    if K < 16 or K > config["max_K"]:
        raise ValueError(f"K must lie in [16, {config['max_K']}], got {K}")

    if certify:
        report = check_docility(spec)
        if not report.passed:
            raise DocilityRequired(
                f"surface fails docility: {', '.join(report.failures)}", report=report
            )

    history = [round_disk(u0, K)]
    if spec.scale == 0.0:
        return history[-1]

    t, h = 0.0, initial_step
    while t < spec.scale:
        target = min(t + h, spec.scale)
        try:
            disk = refine_with_growth(
                predict(history, target), spec, target, config["tail_tol"], config["max_K"]
            )
        except SolverFailure as exc:
            h /= 2
            logger.warning("step failed at t=%.4g (%s); halving to %.3g", target, exc, h)
            if h < config["min_homotopy_step"]:
                raise ContinuationStuck(
                    f"homotopy step fell below {config['min_homotopy_step']} at t={t:.4g}",
                    u0=u0,
                ) from exc
            continue
        history = [*history[-1:], disk]
        t = target
        h = min(2 * h, initial_step)
        logger.debug("t=%.4g solved, residual %.3e, K=%d", t, disk.residual, disk.K)

    disk = history[-1]
    logger.info("disk at u0=%s: residual %.3e, K=%d", u0, disk.residual, disk.K)
    return disk
