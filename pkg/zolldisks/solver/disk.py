"""Holomorphic disks as truncated power series in a CP^1 chart.

A disk is stored through its first projection: ch(zeta) = sum_k c_k zeta^k in
the chart coordinate of `chart`. The second projection is ch(-zeta), so the
lift reaches Pi^-1(N) on the boundary exactly when ch(-zeta) = phi(ch(zeta))
for |zeta| = 1.
"""

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from zolldisks.dataflows.config import resolve
from zolldisks.errors import ChartOverflow, HolomorphyLoss
from zolldisks.geometry.charts import Chart, su2_between
from zolldisks.geometry.projective import (
    P1Point,
    P2Point,
    chordal_p1,
    hopf,
    pi_map,
)
from zolldisks.surface.spec import SurfaceSpec, phi_sphere


@dataclass(frozen=True, eq=False)
class DiskSolution:
    spec_scale: float
    u0: P1Point
    p: P2Point
    chart: Chart
    coeffs: np.ndarray
    residual: float = np.inf

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=complex).ravel())

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def tail(self) -> float:
        """Relative size of the last two coefficients."""
        peak = np.max(np.abs(self.coeffs))
        return float(np.max(np.abs(self.coeffs[-2:])) / peak) if peak > 0 else 0.0

    def values(self, zeta) -> np.ndarray:
        """ch(zeta) in chart coordinates."""
        return np.polynomial.polynomial.polyval(np.asarray(zeta, dtype=complex), self.coeffs)

    def points(self, zeta) -> np.ndarray:
        """ch(zeta) as unit representatives in C^2."""
        return self.chart.from_chart(self.values(zeta))

    def boundary_values(self, n_nodes: int) -> np.ndarray:
        """ch(e^{i tau_j}) at tau_j = 2 pi j / n_nodes."""
        return boundary_series(self.coeffs, n_nodes)

    def boundary_derivative(self, n_nodes: int) -> np.ndarray:
        """d/dtau of ch(e^{i tau}) at the same nodes."""
        k = np.arange(len(self.coeffs))
        return boundary_series(1j * k * self.coeffs, n_nodes)

    def resized(self, K: int) -> "DiskSolution":
        coeffs = np.zeros(K + 1, dtype=complex)
        keep = min(K, self.K) + 1
        coeffs[:keep] = self.coeffs[:keep]
        return replace(self, coeffs=coeffs)

    def with_coeffs(self, coeffs, residual: float = np.inf, spec_scale: Optional[float] = None):
        scale = self.spec_scale if spec_scale is None else spec_scale
        return replace(self, coeffs=coeffs, residual=residual, spec_scale=scale)


def boundary_series(coeffs: np.ndarray, n_nodes: int) -> np.ndarray:
    if n_nodes < len(coeffs):
        raise ValueError(f"{n_nodes} nodes cannot resolve {len(coeffs)} coefficients")
    padded = np.zeros(n_nodes, dtype=complex)
    padded[: len(coeffs)] = coeffs
    return n_nodes * np.fft.ifft(padded)


def default_nodes(K: int) -> int:
    return int(resolve(None, "nodes_per_coefficient")) * K


def gauge_rotate(coeffs: np.ndarray, theta: float) -> np.ndarray:
    """Coefficients of ch(e^{i theta} zeta)."""
    return coeffs * np.exp(1j * theta * np.arange(len(coeffs)))


def gauge_angle(coeffs: np.ndarray) -> float:
    """The rotation that makes c_1 real and positive."""
    return float(-np.angle(coeffs[1])) if len(coeffs) > 1 and coeffs[1] != 0 else 0.0


def round_disk(u0: P1Point, K: Optional[int] = None) -> DiskSolution:
    """The exact scale-0 disk: ch(zeta) = zeta in the chart centred at u0."""
    K = resolve(K, "K")
    coeffs = np.zeros(K + 1, dtype=complex)
    coeffs[1] = 1.0
    disk = DiskSolution(0.0, u0, pi_map(u0, u0), Chart.centered_at(u0), coeffs)
    return replace(disk, residual=boundary_residual(disk, SurfaceSpec(scale=0.0)))


def check_clearance(d: DiskSolution, values: np.ndarray, overflow: Optional[float] = None):
    overflow = resolve(overflow, "chart_overflow")
    distance = float(np.min(d.chart.pole_distance(values)))
    if distance < overflow:
        raise ChartOverflow(
            f"disk sample within {distance:.3e} of the chart pole {d.chart.pole}", u0=d.u0
        )
    return distance


def boundary_residual(
    d: DiskSolution, spec: SurfaceSpec, n_nodes: Optional[int] = None
) -> float:
    """Max over boundary nodes of chordal(ch(-zeta), phi(ch(zeta)))."""
    n_nodes = n_nodes or default_nodes(d.K)
    n_nodes += n_nodes % 2
    values = d.boundary_values(n_nodes)
    check_clearance(d, values)
    x = hopf(d.chart.from_chart(values))
    opposite = np.roll(x, -n_nodes // 2, axis=0)
    # chordal distance on CP^1 is half the Euclidean distance on S^2
    return float(np.max(np.linalg.norm(opposite - phi_sphere(spec, x), axis=-1)) / 2)


def interior_samples(d: DiskSolution, rings: int = 8, n_nodes: Optional[int] = None):
    """Representatives of ch on a few concentric circles, boundary included."""
    n_nodes = n_nodes or default_nodes(d.K)
    radii = np.linspace(0.0, 1.0, rings + 1)[1:]
    tau = 2 * np.pi * np.arange(n_nodes) / n_nodes
    zeta = (radii[:, None] * np.exp(1j * tau)[None, :]).ravel()
    return d.points(np.concatenate([[0.0], zeta]))


def recenter(
    d: DiskSolution,
    chart: Chart,
    holomorphy_tol: Optional[float] = None,
) -> Tuple[DiskSolution, float]:
    """Re-express a disk in another chart.

    The boundary loop is resampled, mapped through the chart transition and
    projected back onto nonnegative frequencies. The result is put in gauge
    (c_1 > 0); the applied rotation angle theta is returned alongside, so a
    boundary parameter tau of the old disk is tau - theta in the new one.
    """
    holomorphy_tol = resolve(holomorphy_tol, "holomorphy_tol")
    n_nodes = 2 * default_nodes(d.K)
    values = d.chart.transition_to(chart)(d.boundary_values(n_nodes))
    spectrum = np.fft.fft(values) / n_nodes
    negative = spectrum[n_nodes // 2 :]
    energy = float(np.linalg.norm(negative))
    if energy > holomorphy_tol * max(1.0, float(np.linalg.norm(spectrum))):
        raise HolomorphyLoss(
            f"chart change leaves negative-frequency energy {energy:.3e}", u0=d.u0
        )
    coeffs = spectrum[: d.K + 1]
    theta = gauge_angle(coeffs)
    coeffs = gauge_rotate(coeffs, theta)
    coeffs[0] = chart.to_chart(d.u0.v)
    return replace(d, chart=chart, coeffs=coeffs), theta


def canonical(d: DiskSolution) -> DiskSolution:
    """The disk in the chart centred at u0, in gauge; used to compare solutions."""
    return recenter(d, Chart.centered_at(d.u0))[0]


def transport(d: DiskSolution, u0: P1Point) -> DiskSolution:
    """Carry a disk to base point u0 by the SU(2) rotation taking d.u0 to u0.

    Exact when phi is the antipodal map; otherwise a warm start for the solver.
    """
    rotation = su2_between(d.u0.v, u0.v)
    chart = d.chart.rotated(rotation)
    coeffs = d.coeffs.copy()
    coeffs[0] = chart.to_chart(u0.v)
    return DiskSolution(d.spec_scale, u0, pi_map(u0, u0), chart, coeffs)


def disk_separation(a: DiskSolution, b: DiskSolution, n_nodes: int = 64) -> float:
    """Max chordal distance between the boundary loops of two gauge-fixed disks."""
    tau = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    return float(np.max(chordal_p1(a.points(tau), b.points(tau))))


def sphere_boundary(d: DiskSolution, n_nodes: Optional[int] = None) -> np.ndarray:
    """Boundary loop in S^2 coordinates (plot data)."""
    n_nodes = n_nodes or default_nodes(d.K)
    return hopf(d.chart.from_chart(d.boundary_values(n_nodes)))


def point_at(d: DiskSolution, tau: float) -> P1Point:
    return P1Point(d.points(np.exp(1j * tau)))


def kappa(d: DiskSolution) -> P2Point:
    """The point where the disk meets Q: Pi(ch(0), ch(0))."""
    centre = P1Point(d.points(0.0))
    return pi_map(centre, centre)
