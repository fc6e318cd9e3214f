"""Docility certification for phi-encoded and for directly sampled surfaces."""

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from zolldisks.dataflows.config import resolve
from zolldisks.geometry.charts import local_from_chart, local_to_chart
from zolldisks.geometry.projective import (
    P2Point,
    TangentFrame2,
    conic,
    fibonacci_sphere,
    hopf,
    inverse_hopf,
    tangent_lines_through,
    tangent_real_coordinates,
    unit,
)
from .spec import SurfaceSpec, phi_sphere

logger = logging.getLogger(__name__)


class DocilityReport(BaseModel):
    """Outcome of a docility certification.

    `failures` names the report fields whose threshold was violated. Fields
    that a mode does not measure stay None.
    """

    passed: bool
    mode: str = "phi"
    sample_count: int = 0
    min_fixed_point_gap: Optional[float] = None
    min_orientation_det: Optional[float] = None
    max_involution_defect: Optional[float] = None
    min_totally_real_det: Optional[float] = None
    min_conic_gap: Optional[float] = None
    min_transversality_det: Optional[float] = None
    thresholds: Dict[str, float] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)

    def summary(self) -> str:
        status = "passed" if self.passed else f"FAILED ({', '.join(self.failures)})"
        return f"docility {status} on {self.sample_count} samples"


def phi_chart_jacobians(spec: SurfaceSpec, x: np.ndarray, step: float) -> np.ndarray:
    """Real 2x2 Jacobian determinants of phi in charts centred at u and at phi(u)."""
    source = inverse_hopf(x)
    target = inverse_hopf(phi_sphere(spec, x))
    offsets = np.array([step, -step, 1j * step, -1j * step])

    moved = local_from_chart(source[:, None, :], np.broadcast_to(offsets, (len(x), 4)))
    images = inverse_hopf(phi_sphere(spec, hopf(moved)))
    w = local_to_chart(target[:, None, :], images)

    d_re = (w[:, 0] - w[:, 1]) / (2 * step)
    d_im = (w[:, 2] - w[:, 3]) / (2 * step)
    return d_re.real * d_im.imag - d_re.imag * d_im.real


def check_docility(
    spec: SurfaceSpec,
    n: Optional[int] = None,
    seed: Optional[int] = None,
) -> DocilityReport:
    """Certify N = Pi(graph phi) through involutivity, fixed-point freeness and orientation reversal."""
    n = resolve(n, "n_dock")
    involution_tol = spec.threshold("involution_tol")
    gap_tol = spec.threshold("fixed_point_gap")
    margin = spec.threshold("orientation_margin")
    step = spec.threshold("fd_step")

    x = fibonacci_sphere(n, seed)
    image = phi_sphere(spec, x)
    back = phi_sphere(spec, image)

    # chordal distance on CP^1 is half the Euclidean distance on S^2
    defect = float(np.max(np.linalg.norm(back - x, axis=-1)) / 2)
    gap = float(np.min(np.linalg.norm(image - x, axis=-1)) / 2)
    det = float(np.max(phi_chart_jacobians(spec, x, step)))

    failures = []
    if not defect < involution_tol:
        failures.append("max_involution_defect")
    if not gap > gap_tol:
        failures.append("min_fixed_point_gap")
    # phi reverses orientation, so the determinant closest to zero is the largest one
    if not det < -margin:
        failures.append("min_orientation_det")

    report = DocilityReport(
        passed=not failures,
        mode="phi",
        sample_count=n,
        min_fixed_point_gap=gap,
        min_orientation_det=det,
        max_involution_defect=defect,
        thresholds={
            "involution_tol": involution_tol,
            "fixed_point_gap": gap_tol,
            "orientation_margin": margin,
        },
        failures=failures,
    )
    logger.info("%s (scale %.4g)", report.summary(), spec.scale)
    return report


def _orthonormal_pair(z: np.ndarray, e1: np.ndarray, e2: np.ndarray) -> np.ndarray:
    coords = tangent_real_coordinates(z, np.stack([e1, e2]))
    q, _ = np.linalg.qr(coords.T)
    return q.T


def totally_real_det(frame: TangentFrame2) -> float:
    """|det| of (e1, e2, J e1, J e2) after real orthonormalization of (e1, e2).

    Equals 1 for a totally real plane orthogonal to its J-image and 0 for a
    complex line.
    """
    z = frame.base.v
    pair = _orthonormal_pair(z, frame.e1, frame.e2)
    # J acts on (Re w1, Im w1, Re w2, Im w2) as (-Im w1, Re w1, -Im w2, Re w2)
    rotated = np.stack([-pair[:, 1], pair[:, 0], -pair[:, 3], pair[:, 2]], axis=1)
    return float(abs(np.linalg.det(np.concatenate([pair, rotated]))))


def transversality_det(frame: TangentFrame2, line_covector: np.ndarray) -> float:
    """|det| of T_pN + T_pA for the projective line A = {a . z = 0} through the base point."""
    z = frame.base.v
    g = unit(np.cross(np.conj(z), line_covector))
    pair = _orthonormal_pair(z, frame.e1, frame.e2)
    line = tangent_real_coordinates(z, np.stack([g, 1j * g]))
    return float(abs(np.linalg.det(np.concatenate([pair, line]))))


def check_docility_sampled(
    frames: Sequence[TangentFrame2],
    totally_real_tol: Optional[float] = None,
    conic_tol: Optional[float] = None,
    transversality_tol: Optional[float] = None,
) -> DocilityReport:
    """Certify a surface given only by tangent frames at sample points.

    Samples within conic_tol of Q count against min_conic_gap and their
    tangent-line test is skipped.
    """
    totally_real_tol = resolve(totally_real_tol, "totally_real_tol")
    conic_tol = resolve(conic_tol, "conic_tol")
    transversality_tol = resolve(transversality_tol, "transversality_tol")

    real_dets, conic_gaps, transversal_dets = [], [], []
    for frame in frames:
        real_dets.append(totally_real_det(frame))
        gap = float(abs(conic(frame.base.v)))
        conic_gaps.append(gap)
        if gap <= conic_tol:
            continue
        for line in tangent_lines_through(frame.base, conic_tol):
            transversal_dets.append(transversality_det(frame, line.a))

    min_real = float(min(real_dets, default=np.inf))
    min_gap = float(min(conic_gaps, default=np.inf))
    min_transversal = float(min(transversal_dets, default=np.inf))

    failures = []
    if not min_real > totally_real_tol:
        failures.append("min_totally_real_det")
    if not min_gap > conic_tol:
        failures.append("min_conic_gap")
    if not min_transversal > transversality_tol:
        failures.append("min_transversality_det")

    report = DocilityReport(
        passed=not failures,
        mode="sampled",
        sample_count=len(frames),
        min_totally_real_det=min_real,
        min_conic_gap=min_gap,
        min_transversality_det=min_transversal,
        thresholds={
            "totally_real_tol": totally_real_tol,
            "conic_tol": conic_tol,
            "transversality_tol": transversality_tol,
        },
        failures=failures,
    )
    logger.info(report.summary())
    return report


def standard_rp2_frames(n: int, seed: Optional[int] = None) -> List[TangentFrame2]:
    """Orthonormal real frames of the standard RP^2 at n lattice points."""
    frames = []
    for x in fibonacci_sphere(n, seed):
        axis = np.eye(3)[np.argmin(np.abs(x))]
        e1 = np.cross(x, axis)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(x, e1)
        frames.append(TangentFrame2(P2Point(x.astype(complex)), e1.astype(complex), e2.astype(complex)))
    return frames
