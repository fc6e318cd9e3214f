"""Damped Gauss-Newton corrector for the boundary condition ch(-zeta) = phi(ch(zeta))."""

import logging
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import lstsq, solve

from zolldisks.dataflows.config import get_config, resolve
from zolldisks.errors import NoConvergence
from zolldisks.geometry.charts import Chart, choose_pole
from zolldisks.geometry.projective import (
    P1Point,
    antipodal_array,
    fibonacci_points,
    hopf,
    inverse_hopf,
    pi_map,
)
from zolldisks.surface.spec import SurfaceSpec, phi_sphere
from .disk import (
    DiskSolution,
    boundary_residual,
    check_clearance,
    default_nodes,
    gauge_angle,
    gauge_rotate,
    interior_samples,
    recenter,
)

logger = logging.getLogger(__name__)


class BoundarySystem:
    """Collocation residuals and their Jacobian for one disk chart and one surface."""

    def __init__(self, spec: SurfaceSpec, chart: Chart, K: int, w0: complex, step: float):
        self.spec = spec
        self.chart = chart
        self.K = K
        self.w0 = w0
        self.step = step
        self.n_nodes = default_nodes(K)
        tau = 2 * np.pi * np.arange(self.n_nodes) / self.n_nodes
        k = np.arange(K + 1)
        self.powers = np.exp(1j * np.outer(tau, k))
        self.signs = (-1.0) ** k

    def phi_chart(self, w: np.ndarray) -> np.ndarray:
        """phi read in this chart."""
        x = hopf(self.chart.from_chart(w))
        return self.chart.to_chart(inverse_hopf(phi_sphere(self.spec, x)))

    def residual(self, coeffs: np.ndarray) -> np.ndarray:
        w = self.powers @ coeffs
        opposite = self.powers @ (self.signs * coeffs)
        mismatch = opposite - self.phi_chart(w)
        pin = coeffs[0] - self.w0
        return np.concatenate(
            [mismatch.real, mismatch.imag, [pin.real, pin.imag, coeffs[1].imag]]
        )

    def jacobian(self, coeffs: np.ndarray) -> np.ndarray:
        """Real Jacobian over (Re c_0..c_K, Im c_0..c_K); phi differentiated centrally."""
        h = self.step
        w = self.powers @ coeffs
        moved = self.phi_chart(np.concatenate([w + h, w - h, w + 1j * h, w - 1j * h]))
        moved = moved.reshape(4, -1)
        d_re = ((moved[0] - moved[1]) / (2 * h))[:, None]
        d_im = ((moved[2] - moved[3]) / (2 * h))[:, None]

        Z = self.powers
        col_re = self.signs * Z - (d_re * Z.real + d_im * Z.imag)
        col_im = 1j * self.signs * Z - (-d_re * Z.imag + d_im * Z.real)
        top = np.hstack([col_re, col_im])
        rows = [top.real, top.imag]

        constraints = np.zeros((3, 2 * (self.K + 1)))
        constraints[0, 0] = 1.0
        constraints[1, self.K + 1] = 1.0
        constraints[2, self.K + 2] = 1.0
        return np.vstack(rows + [constraints])


def needs_rechart(d: DiskSolution, threshold: float) -> bool:
    clearance = np.min(d.chart.pole_distance(d.values(_sample_zeta(d))))
    return bool(clearance < threshold)


def _sample_zeta(d: DiskSolution, rings: int = 8) -> np.ndarray:
    n_nodes = default_nodes(d.K)
    radii = np.linspace(0.0, 1.0, rings + 1)
    tau = 2 * np.pi * np.arange(n_nodes) / n_nodes
    return (radii[:, None] * np.exp(1j * tau)[None, :]).ravel()


def rechart(d: DiskSolution, n_candidates: int = 200) -> DiskSolution:
    """Move the disk to the chart whose pole is farthest from its image."""
    samples = interior_samples(d)
    candidates = np.vstack([antipodal_array(d.u0.v)[None, :], fibonacci_points(n_candidates)])
    pole, clearance = choose_pole(samples, candidates)
    logger.warning(
        "re-charting disk at u0=%s: new pole %s with clearance %.3f", d.u0, pole, clearance
    )
    moved, _ = recenter(d, Chart(pole))
    return moved


def newton_refine(
    d: DiskSolution,
    spec: SurfaceSpec,
    t: float,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> DiskSolution:
    """Correct `d` onto the disk of the surface at scale t.

    Levenberg-style damping: the damping parameter is divided by 3 after an
    accepted step and multiplied by 4 after a rejected one.
    """
    config = get_config()
    tol = config["newton_tol"] if tol is None else tol
    max_iter = config["max_newton_iter"] if max_iter is None else max_iter
    spec_t = spec.with_scale(t)

    if needs_rechart(d, config["rechart_threshold"]):
        d = rechart(d)
    check_clearance(d, d.boundary_values(default_nodes(d.K)))

    system = BoundarySystem(spec_t, d.chart, d.K, d.chart.to_chart(d.u0.v), config["fd_step"])
    coeffs = d.coeffs.copy()
    r = system.residual(coeffs)
    cost = float(r @ r)
    damping = config["initial_damping"]
    chordal = boundary_residual(d.with_coeffs(coeffs), spec_t)

    iteration = 0
    while chordal >= tol:
        if iteration >= max_iter:
            raise NoConvergence(
                f"residual {chordal:.3e} after {iteration} iterations at t={t:.4g}", u0=d.u0
            )
        iteration += 1
        J = system.jacobian(coeffs)
        normal = J.T @ J
        gradient = J.T @ r
        while True:
            step = solve(normal + damping * np.eye(len(normal)), -gradient, assume_a="pos")
            trial = coeffs + step[: d.K + 1] + 1j * step[d.K + 1 :]
            r_trial = system.residual(trial)
            cost_trial = float(r_trial @ r_trial)
            if np.isfinite(cost_trial) and cost_trial < cost:
                damping = max(damping / 3, 1e-15)
                break
            damping *= 4
            if damping > 1e8:
                raise NoConvergence(
                    f"damping exhausted at residual {chordal:.3e}, t={t:.4g}", u0=d.u0
                )
        coeffs, r, cost = trial, r_trial, cost_trial
        candidate = d.with_coeffs(coeffs)
        chordal = boundary_residual(candidate, spec_t)
        logger.debug(
            "newton %d: chordal residual %.3e, damping %.1e", iteration, chordal, damping
        )
        if needs_rechart(candidate, config["rechart_threshold"]):
            d = rechart(candidate)
            system = BoundarySystem(
                spec_t, d.chart, d.K, d.chart.to_chart(d.u0.v), config["fd_step"]
            )
            coeffs = d.coeffs.copy()
            r = system.residual(coeffs)
            cost = float(r @ r)
            chordal = boundary_residual(d, spec_t)

    coeffs = gauge_rotate(coeffs, gauge_angle(coeffs))
    refined = replace(d, coeffs=coeffs, spec_scale=t)
    return replace(refined, residual=boundary_residual(refined, spec_t))


def pin_derivatives(
    d: DiskSolution, spec: SurfaceSpec, step: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Derivatives of the coefficients of a converged disk along Re w0 and Im w0.

    The boundary equations vanish identically along the family, so the
    derivatives solve J dc = e_pin with J the collocation Jacobian at `d`.
    """
    step = resolve(step, "fd_step")
    system = BoundarySystem(spec.with_scale(d.spec_scale), d.chart, d.K, d.coeffs[0], step)
    J = system.jacobian(d.coeffs)
    rhs = np.zeros((J.shape[0], 2))
    rhs[2 * system.n_nodes, 0] = 1.0
    rhs[2 * system.n_nodes + 1, 1] = 1.0
    delta = lstsq(J, rhs)[0]
    columns = delta[: d.K + 1] + 1j * delta[d.K + 1 :]
    return columns[:, 0], columns[:, 1]


def shift_base_point(
    d: DiskSolution, u0: np.ndarray, derivatives: Tuple[np.ndarray, np.ndarray]
) -> DiskSolution:
    """First-order disk at base point u0, kept in the chart of `d`."""
    d_re, d_im = derivatives
    dw = d.chart.to_chart(u0) - d.coeffs[0]
    coeffs = d.coeffs + dw.real * d_re + dw.imag * d_im
    coeffs[0] = d.coeffs[0] + dw
    target = P1Point(u0)
    return DiskSolution(d.spec_scale, target, pi_map(target, target), d.chart, coeffs)


def predict_base_point(d: DiskSolution, spec: SurfaceSpec, u0: P1Point) -> DiskSolution:
    """Linear predictor for the disk at a nearby base point, scored by its residual."""
    moved = shift_base_point(d, u0.v, pin_derivatives(d, spec))
    return replace(moved, residual=boundary_residual(moved, spec.with_scale(d.spec_scale)))
