"""Geodesics of the reconstructed projective structure as fibers of the disk family.

For a surface point z = Pi(u, phi(u)) the geodesic C_z is the set of moduli
points u0 whose disk boundary passes through u. Along the fiber the unknowns
are the chart coordinate a of u0 (chart centred at the current node) and the
boundary angle tau; the two real equations say that ch_{u0}(e^{i tau}) = u.
The disk at each u0 is taken in its canonical chart (centred at the
representative u0 vector, c_1 > 0), which makes tau a smooth function along
the curve.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree
from tqdm import tqdm

from zolldisks.dataflows.config import get_config, resolve
from zolldisks.errors import NotClosed, SeedNotFound, SolverFailure, TraceDiverged
from zolldisks.geometry.charts import Chart, local_from_chart, local_to_chart
from zolldisks.geometry.projective import P1Point, chordal_p1, hopf
from zolldisks.solver.continuation import refine_with_growth
from zolldisks.solver.disk import (
    DiskSolution,
    boundary_residual,
    canonical,
    default_nodes,
    gauge_angle,
    gauge_rotate,
    point_at,
    recenter,
    transport,
)
from zolldisks.solver.newton import pin_derivatives, shift_base_point
from zolldisks.surface.spec import SurfaceSpec
from .sweep import ModuliGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Geodesic:
    z_label: P1Point
    u0s: np.ndarray
    taus: np.ndarray
    closed: bool
    arclength: float

    @property
    def nodes(self) -> List[Tuple[P1Point, float]]:
        return [(P1Point(u0), float(tau)) for u0, tau in zip(self.u0s, self.taus)]

    def sphere_points(self) -> np.ndarray:
        """The u0 polyline in S^2 coordinates."""
        return hopf(self.u0s)

    @property
    def closure_gap(self) -> float:
        return float(chordal_p1(self.u0s[0], self.u0s[-1]))


# DISK PROVIDERS =======================================================================


def exact_disk(spec: SurfaceSpec, u0: np.ndarray, warm: DiskSolution, grid: ModuliGrid):
    """Re-solve the disk at u0 from a nearby converged disk."""
    config = get_config()
    start = transport(warm, P1Point(u0))
    disk = refine_with_growth(start, spec, spec.scale, config["tail_tol"], config["max_K"])
    return canonical(disk)


def interpolated_disk(spec: SurfaceSpec, u0: np.ndarray, warm: DiskSolution, grid: ModuliGrid):
    """Inverse-distance blend of the three nearest grid disks carried to u0 (preview quality)."""
    target = P1Point(u0)
    neighbours = grid.nearest(target, k=3)
    distances = np.array([chordal_p1(d.u0.v, target.v) for d in neighbours])
    if np.min(distances) < 1e-12:
        return canonical(transport(neighbours[int(np.argmin(distances))], target))
    weights = 1 / distances
    K = max(d.K for d in neighbours)
    blend = np.zeros(K + 1, dtype=complex)
    for weight, d in zip(weights, neighbours):
        blend += weight * canonical(transport(d.resized(K), target)).coeffs
    blend /= weights.sum()
    blend = gauge_rotate(blend, gauge_angle(blend))
    base = canonical(transport(neighbours[0].resized(K), target))
    disk = base.with_coeffs(blend, spec_scale=spec.scale)
    return disk.with_coeffs(blend, boundary_residual(disk, spec), spec.scale)


DISK_PROVIDERS: Dict[str, Callable] = {
    "exact": exact_disk,
    "interpolated": interpolated_disk,
}


def route_to_provider(mode: Optional[str] = None) -> Callable:
    mode = resolve(mode, "geodesic_mode")
    if mode not in DISK_PROVIDERS:
        raise ValueError(f"Geodesic mode '{mode}' not supported")
    return DISK_PROVIDERS[mode]


# FIBER EQUATION =======================================================================


class FiberEquation:
    """G(a, tau) = chart_u(ch_{u0(a)}(e^{i tau})) with u0(a) read in the chart centred at `base`."""

    def __init__(self, spec: SurfaceSpec, grid: ModuliGrid, u: P1Point, provider: Callable, h: float):
        self.spec = spec
        self.grid = grid
        self.target = Chart.centered_at(u)
        self.provider = provider
        self.h = h

    def disk_at(self, base: np.ndarray, a: complex, warm: DiskSolution) -> DiskSolution:
        return self.provider(self.spec, local_from_chart(base, a), warm, self.grid)

    def value(self, disk: DiskSolution, tau: float) -> Tuple[complex, complex]:
        """G and dG/dtau for a canonical disk."""
        k = np.arange(len(disk.coeffs))
        phases = np.exp(1j * k * tau)
        w = np.sum(disk.coeffs * phases)
        dw = np.sum(1j * k * disk.coeffs * phases)
        transition = disk.chart.transition_to(self.target)
        return complex(transition(w)), complex(transition.derivative(w) * dw)

    def linearize(self, base, y: np.ndarray, disk: DiskSolution):
        """G at y = (Re a, Im a, tau) and its real 2x3 Jacobian, `disk` being the disk at u0(a).

        The a-columns difference G against the first-order disks at u0(a + h)
        and u0(a + ih), so no further solves are needed.
        """
        a = complex(y[0], y[1])
        g, g_tau = self.value(disk, y[2])
        derivatives = pin_derivatives(disk, self.spec)
        columns = []
        for shift in (self.h, 1j * self.h):
            moved = shift_base_point(disk, local_from_chart(base, a + shift), derivatives)
            g_shift, _ = self.value(canonical(moved), y[2])
            columns.append((g_shift - g) / self.h)
        columns = np.array(columns + [g_tau])
        return np.array([g.real, g.imag]), np.vstack([columns.real, columns.imag])

    def evaluate(self, base, y: np.ndarray, warm: DiskSolution):
        """G at y, the real 2x3 Jacobian and the disk at y; one disk solve."""
        disk = self.disk_at(base, complex(y[0], y[1]), warm)
        g, jacobian = self.linearize(base, y, disk)
        return g, jacobian, disk


def tangent_of(jacobian: np.ndarray, previous: Optional[np.ndarray] = None) -> np.ndarray:
    t = np.cross(jacobian[0], jacobian[1])
    t /= np.linalg.norm(t)
    if previous is not None and np.dot(t, previous) < 0:
        t = -t
    return t


def find_seed(equation: FiberEquation, grid: ModuliGrid, u: P1Point, seed_radius: float = 0.25):
    """A node (u0, tau) of the fiber near u, from the grid disk boundary passing closest to u."""
    n_nodes = default_nodes(grid.K)
    loops = [hopf(d.points(np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes))) for d in grid.solutions]
    distance, index = cKDTree(np.concatenate(loops)).query(u.sphere())
    if distance / 2 > seed_radius:
        raise SeedNotFound(f"no grid boundary within {seed_radius} of {u}", u0=u)

    disk_index, node = divmod(int(index), n_nodes)
    disk, theta = recenter(grid.solutions[disk_index], Chart.centered_at(grid.solutions[disk_index].u0))
    base = disk.u0.v
    y = np.array([0.0, 0.0, 2 * np.pi * node / n_nodes - theta])

    tol = 0.01 * resolve(None, "membership_tol")
    for _ in range(30):
        g, jacobian, disk_y = equation.evaluate(base, y, disk)
        if np.linalg.norm(g) < tol:
            return local_from_chart(base, complex(y[0], y[1])), float(y[2]), disk_y
        y = y - np.linalg.lstsq(jacobian, g, rcond=None)[0]
        disk = disk_y
    raise SeedNotFound(f"seed refinement did not converge near {u}", u0=u)


def correct(
    equation: FiberEquation,
    base: np.ndarray,
    y_pred: np.ndarray,
    constraint: np.ndarray,
    offset: float,
    warm: DiskSolution,
    tol: float,
    max_iter: int = 10,
):
    """Newton on G(y) = 0 and constraint . y = offset, starting from the predictor."""
    y = y_pred.copy()
    disk = warm
    for _ in range(max_iter):
        g, jacobian, disk = equation.evaluate(base, y, disk)
        mismatch = np.dot(constraint, y) - offset
        if np.linalg.norm(g) < tol and abs(mismatch) < tol:
            return y, jacobian, disk
        system = np.vstack([jacobian, constraint])
        y = y - np.linalg.solve(system, np.append(g, mismatch))
    raise TraceDiverged("corrector did not converge")


def trace_geodesic(
    spec: SurfaceSpec,
    grid: ModuliGrid,
    u: P1Point,
    mode: Optional[str] = None,
    direction: int = 1,
    step: Optional[float] = None,
    max_steps: Optional[int] = None,
    progress: bool = False,
) -> Geodesic:
    """Trace the fiber through u by pseudo-arclength continuation until it closes."""
    config = get_config()
    step = config["geodesic_step"] if step is None else step
    max_steps = config["geodesic_max_steps"] if max_steps is None else max_steps
    min_step = step / 64
    tol = 0.01 * config["membership_tol"]

    equation = FiberEquation(spec, grid, u, route_to_provider(mode), config["fd_step"])
    start, tau, disk = find_seed(equation, grid, u)
    base = start
    _, jacobian = equation.linearize(base, np.array([0.0, 0.0, tau]), disk)
    t = tangent_of(jacobian)
    if direction * t[2] < 0:
        t = -t

    u0s, taus = [start], [tau]
    arclength, ds = 0.0, step
    landed = False
    bar = tqdm(total=max_steps, desc="geodesic", unit="step", disable=not progress)
    try:
        for _ in range(max_steps):
            y0 = np.array([0.0, 0.0, tau])
            a_start = local_to_chart(base, start)
            ahead = np.array([a_start.real, a_start.imag])
            landing = (
                arclength > config["min_closed_arclength"]
                and np.linalg.norm(ahead) < 1.5 * ds
                and np.dot(ahead, t[:2]) > 0
            )
            try:
                if landing:
                    normal = np.append(t[:2], 0.0)
                    s = np.dot(ahead, t[:2]) / np.dot(t[:2], t[:2])
                    y, jacobian, disk_new = correct(
                        equation, base, y0 + s * t, normal, np.dot(ahead, t[:2]), disk, tol
                    )
                else:
                    y, jacobian, disk_new = correct(
                        equation, base, y0 + ds * t, t, np.dot(t, y0) + ds, disk, tol
                    )
            except (SolverFailure, np.linalg.LinAlgError) as exc:
                ds /= 2
                logger.warning("geodesic step failed (%s); step %.3g", exc, ds)
                if ds < min_step:
                    raise TraceDiverged(f"step fell below {min_step:.3g} near {P1Point(base)}", u0=P1Point(base)) from exc
                continue

            a = complex(y[0], y[1])
            node = local_from_chart(base, a)
            arclength += float(chordal_p1(base, node))
            # rebase: the chart centred at the new node, tangent carried by the transition
            multiplier = Chart.centered_at(base).transition_to(Chart.centered_at(node)).derivative(a)
            carried = multiplier * complex(t[0], t[1])
            previous = np.array([carried.real, carried.imag, t[2]])
            base, tau, disk = node, float(y[2]), disk_new
            u0s.append(node)
            taus.append(tau)
            bar.update(1)
            if landing:
                landed = True
                break
            _, jacobian = equation.linearize(base, np.array([0.0, 0.0, tau]), disk)
            t = tangent_of(jacobian, previous)
            ds = min(2 * ds, step)
        else:
            raise NotClosed(f"no closure after {max_steps} steps from {P1Point(start)}", u0=P1Point(start))
    finally:
        bar.close()

    u0s = np.stack(u0s)
    gap = float(chordal_p1(u0s[0], u0s[-1]))
    closed = landed and gap < config["closure_tol"] and arclength > config["min_closed_arclength"]
    geodesic = Geodesic(u, u0s, np.array(taus), closed, arclength)
    logger.info(
        "geodesic through %s: %d nodes, arclength %.5f, closure gap %.2e",
        u, len(u0s), arclength, gap,
    )
    return geodesic


def membership_errors(spec: SurfaceSpec, geodesic: Geodesic, grid: ModuliGrid, mode: Optional[str] = None):
    """chordal(ch_{u0}(e^{i tau}), u) at every node, disks re-solved at the node base points."""
    provider = route_to_provider(mode)
    errors = []
    warm = grid.nearest(P1Point(geodesic.u0s[0]))[0]
    for u0, tau in zip(geodesic.u0s, geodesic.taus):
        disk = provider(spec, u0, warm, grid)
        errors.append(float(chordal_p1(point_at(disk, tau).v, geodesic.z_label.v)))
        warm = disk
    return np.array(errors)


def round_fiber_deviation(geodesic: Geodesic) -> float:
    """Max distance of the u0 nodes from the great circle orthogonal to u (scale 0 fiber)."""
    axis = geodesic.z_label.sphere()
    return float(np.max(np.abs(geodesic.sphere_points() @ axis)))


def min_nonadjacent_separation(geodesic: Geodesic) -> float:
    """Smallest chordal distance between u0 nodes that are not neighbours on the closed curve."""
    nodes = geodesic.u0s[:-1] if geodesic.closed else geodesic.u0s
    n = len(nodes)
    distances = chordal_p1(nodes[:, None, :], nodes[None, :, :])
    index = np.arange(n)
    gap = np.abs(index[:, None] - index[None, :])
    if geodesic.closed:
        gap = np.minimum(gap, n - gap)
    return float(np.min(distances[gap > 1]))
