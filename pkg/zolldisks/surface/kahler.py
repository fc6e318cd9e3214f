"""The Kahler form omega = w1* check-omega + w2* check-omega on CP^1 x CP^1.

check-omega = (alpha - phi* alpha) / 2, with alpha the round area form of the
unit sphere. The graph of phi is Lagrangian for omega and each factor has
omega-area 4 pi.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from zolldisks.dataflows.config import resolve
from zolldisks.errors import QuadratureUnresolved
from .spec import SurfaceSpec, phi_sphere

logger = logging.getLogger(__name__)

SphereMap = Callable[[np.ndarray], np.ndarray]


def alpha_density(x: np.ndarray, x_s: np.ndarray, x_t: np.ndarray) -> np.ndarray:
    """alpha(x_s, x_t) at x, positive for the complex orientation of CP^1."""
    return -np.sum(x * np.cross(x_s, x_t), axis=-1)


def omega_check_density(
    spec: SurfaceSpec,
    mapping: Callable[[np.ndarray, np.ndarray], np.ndarray],
    s: np.ndarray,
    t: np.ndarray,
    step: Optional[float] = None,
) -> np.ndarray:
    """Density (per ds dt) of the pullback of check-omega by (s, t) -> mapping(s, t) in S^2."""
    step = resolve(step, "fd_step")
    s_points = np.stack([s, s + step, s - step, s, s])
    t_points = np.stack([t, t, t, t + step, t - step])
    x = mapping(s_points, t_points)
    y = phi_sphere(spec, x)

    def density(z):
        dz_ds = (z[1] - z[2]) / (2 * step)
        dz_dt = (z[3] - z[4]) / (2 * step)
        return alpha_density(z[0], dz_ds, dz_dt)

    return 0.5 * (density(x) - density(y))


def sphere_parameterization(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """(s, t) = (angle from the south pole, azimuth) -> S^2; this order is the complex orientation."""
    r = np.sin(s)
    return np.stack([r * np.cos(t), r * np.sin(t), -np.cos(s)], axis=-1)


@dataclass(frozen=True)
class SpherePatch:
    """A surface in CP^1 x CP^1 parameterized by the sphere: x -> (first(x), second(x)).

    A factor left as None is constant on the patch and carries no area.
    """

    name: str
    first: Optional[SphereMap]
    second: Optional[SphereMap]


def factor_patch() -> SpherePatch:
    return SpherePatch("factor", lambda x: x, None)


def graph_patch(spec: SurfaceSpec) -> SpherePatch:
    return SpherePatch("graph", lambda x: x, lambda x: phi_sphere(spec, x))


def diagonal_patch() -> SpherePatch:
    return SpherePatch("diagonal", lambda x: x, lambda x: x)


def sphere_nodes(order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre in polar angle times trapezoid in azimuth; returns s, t, weights."""
    s, ws = np.polynomial.legendre.leggauss(order)
    s, ws = np.pi / 2 * (s + 1), np.pi / 2 * ws
    t = 2 * np.pi * np.arange(2 * order) / (2 * order)
    wt = np.full(2 * order, 2 * np.pi / (2 * order))
    S, T = np.meshgrid(s, t, indexing="ij")
    return S.ravel(), T.ravel(), np.outer(ws, wt).ravel()


@dataclass(frozen=True)
class KahlerData:
    spec: SurfaceSpec
    order: int = None

    def __post_init__(self):
        object.__setattr__(self, "order", int(resolve(self.order, "kahler_quadrature_order")))

    def integrate(self, patch: SpherePatch, order: int) -> float:
        s, t, weights = sphere_nodes(order)
        total = 0.0
        for component in (patch.first, patch.second):
            if component is None:
                continue
            mapping = lambda a, b, f=component: f(sphere_parameterization(a, b))
            total += float(np.sum(weights * omega_check_density(self.spec, mapping, s, t)))
        return total

    def check_area(self) -> float:
        """Integral of check-omega over CP^1 (4 pi for every docile surface)."""
        return omega_pullback_area(self, factor_patch())


def omega_pullback_area(
    kd: KahlerData, patch: SpherePatch, rel_tol: Optional[float] = None
) -> float:
    """Signed omega-area of `patch`, confirmed by doubling the quadrature order."""
    rel_tol = resolve(rel_tol, "quadrature_rel_tol")
    coarse = kd.integrate(patch, kd.order)
    fine = kd.integrate(patch, 2 * kd.order)
    if abs(coarse - fine) > rel_tol * max(1.0, abs(fine)):
        raise QuadratureUnresolved(
            f"{patch.name}: order {kd.order} gives {coarse:.12g}, order {2 * kd.order} gives {fine:.12g}"
        )
    logger.debug("omega area of %s patch: %.12g", patch.name, fine)
    return fine
