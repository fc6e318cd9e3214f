"""Maslov, area and embeddedness diagnostics of converged disks."""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel
from scipy.spatial.distance import cdist

from zolldisks.dataflows.config import get_config
from zolldisks.errors import DerivativeVanishes, PhaseStepTooLarge
from zolldisks.geometry.projective import hopf
from zolldisks.surface.kahler import omega_check_density
from zolldisks.surface.spec import SurfaceSpec, phi_sphere
from .disk import DiskSolution, boundary_residual, default_nodes

logger = logging.getLogger(__name__)


class DiskDiagnostics(BaseModel):
    residual: float
    lift_winding: int
    normal_maslov: int
    total_maslov: int
    lift_area: float
    half_area: float
    diagonal_gap: float
    boundary_injectivity_gap: float
    interior_gap: float

    def summary(self) -> str:
        return (
            f"residual {self.residual:.2e}, Maslov {self.total_maslov} "
            f"(normal {self.normal_maslov}), area {self.lift_area:.10f}"
        )


def winding_number(loop: np.ndarray) -> Optional[int]:
    """Winding of a closed sampled loop around 0, or None if a phase step is unresolved."""
    increments = np.angle(np.roll(loop, -1) / loop)
    if np.max(np.abs(increments)) >= np.pi / 2:
        return None
    return int(np.round(np.sum(increments) / (2 * np.pi)))


def maslov_lift_winding(d: DiskSolution, derivative_tol: float = 1e-6) -> int:
    """Winding number of (i gamma')^2 for the boundary loop gamma = ch(e^{i tau}).

    The sampling is doubled until every phase increment is resolved, up to
    max_winding_nodes_factor * K nodes.
    """
    max_nodes = get_config()["max_winding_nodes_factor"] * d.K
    n_nodes = default_nodes(d.K)
    while True:
        derivative = d.boundary_derivative(n_nodes)
        smallest = float(np.min(np.abs(derivative)))
        if smallest < derivative_tol:
            raise DerivativeVanishes(f"|gamma'| = {smallest:.3e} on the boundary of {d.u0}")
        winding = winding_number((1j * derivative) ** 2)
        if winding is not None:
            return winding
        if n_nodes >= max_nodes:
            raise PhaseStepTooLarge(f"phase steps unresolved at {n_nodes} nodes")
        n_nodes = min(2 * n_nodes, max_nodes)
        logger.debug("refining winding count to %d nodes", n_nodes)


def disk_quadrature(d: DiskSolution, radial_order: int):
    """Gauss-Legendre in the radius times trapezoid in the angle; returns r, theta, weights."""
    r, wr = np.polynomial.legendre.leggauss(radial_order)
    r, wr = (r + 1) / 2, wr / 2
    n_angles = default_nodes(d.K)
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    R, T = np.meshgrid(r, theta, indexing="ij")
    weights = np.outer(wr, np.full(n_angles, 2 * np.pi / n_angles))
    return R.ravel(), T.ravel(), weights.ravel()


def disk_diagnostics(
    d: DiskSolution,
    spec: SurfaceSpec,
    radial_order: Optional[int] = None,
    separation: float = np.pi / 8,
    diagonal_radius: float = 0.05,
) -> DiskDiagnostics:
    config = get_config()
    radial_order = config["disk_radial_order"] if radial_order is None else radial_order
    spec_t = spec.with_scale(d.spec_scale)

    residual = boundary_residual(d, spec_t)
    winding = maslov_lift_winding(d)

    r, theta, weights = disk_quadrature(d, radial_order)

    def first(rr, tt):
        return hopf(d.points(rr * np.exp(1j * tt)))

    def second(rr, tt):
        return hopf(d.points(-rr * np.exp(1j * tt)))

    half_area = float(np.sum(weights * omega_check_density(spec_t, first, r, theta)))
    shadow_area = float(np.sum(weights * omega_check_density(spec_t, second, r, theta)))

    x = first(r, theta)
    x_opposite = second(r, theta)
    interior_gap = float(
        np.min(np.linalg.norm(x_opposite - phi_sphere(spec_t, x), axis=-1)) / 2
    )

    n_nodes = default_nodes(d.K)
    boundary = hopf(d.chart.from_chart(d.boundary_values(n_nodes)))
    opposite = np.roll(boundary, -n_nodes // 2, axis=0)
    away = r >= diagonal_radius
    diagonal_gap = float(
        min(
            np.min(np.linalg.norm(x[away] - x_opposite[away], axis=-1)),
            np.min(np.linalg.norm(boundary - opposite, axis=-1)),
        )
        / 2
    )

    index = np.arange(n_nodes)
    offset = np.abs(index[:, None] - index[None, :])
    offset = np.minimum(offset, n_nodes - offset) * (2 * np.pi / n_nodes)
    distances = cdist(boundary, boundary) / 2
    injectivity_gap = float(np.min(distances[offset >= separation]))

    diagnostics = DiskDiagnostics(
        residual=residual,
        lift_winding=winding,
        normal_maslov=winding // 2,
        total_maslov=winding // 2 + 2,
        lift_area=half_area + shadow_area,
        half_area=half_area,
        diagonal_gap=diagonal_gap,
        boundary_injectivity_gap=injectivity_gap,
        interior_gap=interior_gap,
    )
    if winding % 2:
        logger.warning("odd lift winding %d at u0=%s", winding, d.u0)
    logger.info("diagnostics at u0=%s: %s", d.u0, diagnostics.summary())
    return diagnostics
