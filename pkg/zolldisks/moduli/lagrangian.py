"""Lagrangian test: does Im Upsilon vanish on the tangent planes of N?"""

import logging
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from zolldisks.dataflows.config import get_config
from zolldisks.geometry.projective import fibonacci_points, upsilon_im_abs
from zolldisks.surface.spec import SurfaceSpec, phi_points, surface_frames

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    LAGRANGIAN = "lagrangian"
    NOT_LAGRANGIAN = "not_lagrangian"
    INCONCLUSIVE = "inconclusive"


class LagrangianReport(BaseModel):
    max_im: float
    mean_im: float
    sample_count: int
    verdict: Verdict

    def summary(self) -> str:
        return (
            f"{self.verdict.value}: max |Im Upsilon| {self.max_im:.3e}, "
            f"mean {self.mean_im:.3e} over {self.sample_count} samples"
        )


def classify(max_im: float, lagrangian_tol: float, not_lagrangian_tol: float) -> Verdict:
    if max_im < lagrangian_tol:
        return Verdict.LAGRANGIAN
    if max_im > not_lagrangian_tol:
        return Verdict.NOT_LAGRANGIAN
    return Verdict.INCONCLUSIVE


def lagrangian_report(
    spec: SurfaceSpec,
    m: int,
    seed: Optional[int] = None,
    relabel: bool = False,
) -> LagrangianReport:
    """Sample |Im Upsilon| on unit-area tangent frames of N at m lattice points.

    With relabel=True the frames are built at phi(u) instead of u, which
    describes the same surface points through the other sheet of the double cover.
    """
    config = get_config()
    points = fibonacci_points(m, seed)
    if relabel:
        points = phi_points(spec, points)

    values = []
    for frame in surface_frames(spec, points):
        frame = frame.scaled(1 / np.sqrt(frame.real_area()))
        values.append(upsilon_im_abs(frame))
    values = np.array(values)

    max_im = float(values.max())
    report = LagrangianReport(
        max_im=max_im,
        mean_im=float(values.mean()),
        sample_count=m,
        verdict=classify(max_im, config["lagrangian_tol"], config["not_lagrangian_tol"]),
    )
    logger.info("scale %.4g: %s", spec.scale, report.summary())
    return report


LADDER_SCALES = (1.0, 0.5, 0.25, 0.125, 0.0)


def scale_ladder(
    spec: SurfaceSpec,
    m: int,
    scales: Sequence[float] = LADDER_SCALES,
    seed: Optional[int] = None,
) -> List[Tuple[float, LagrangianReport]]:
    """Lagrangian reports of the same field at each homotopy scale."""
    return [(s, lagrangian_report(spec.with_scale(s), m, seed=seed)) for s in scales]


def is_monotone(ladder: List[Tuple[float, LagrangianReport]]) -> bool:
    """True when max_im does not increase as the scale shrinks."""
    ordered = sorted(ladder, key=lambda item: -item[0])
    values = [report.max_im for _, report in ordered]
    return all(b <= a for a, b in zip(values, values[1:]))
