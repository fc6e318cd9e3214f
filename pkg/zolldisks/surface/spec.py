"""Surfaces in phi-normal form: phi = psi o a o psi^-1 with psi the flow of a sphere field."""

import hashlib
import json
from dataclasses import dataclass, field as dataclass_field, replace
from enum import Enum
from typing import Dict, Optional

import numpy as np

from zolldisks.dataflows.config import resolve
from zolldisks.geometry.projective import (
    P1Point,
    P2Point,
    TangentFrame2,
    align_phase,
    hopf,
    inverse_hopf,
    pi_points,
    pi_raw,
    unit,
)
from zolldisks.geometry.charts import Chart
from .field import SphereField


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


@dataclass(frozen=True, eq=False)
class SurfaceSpec:
    """A docile surface candidate N = Pi(graph phi).

    `scale` is the homotopy parameter: psi is the time-`scale` flow of the
    tangential field, so scale 0 gives phi = a and the standard RP^2.
    `thresholds` optionally overrides docility tolerances for this surface.
    """

    field: SphereField = dataclass_field(default_factory=SphereField)
    scale: float = 1.0
    flow_steps: int = None
    thresholds: Dict[str, float] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        flow_steps = resolve(self.flow_steps, "flow_steps")
        if not (0.0 <= float(self.scale) <= 1.0):
            raise ValueError(f"scale must lie in [0, 1], got {self.scale}")
        if int(flow_steps) < 1:
            raise ValueError(f"flow_steps must be positive, got {flow_steps}")
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "flow_steps", int(flow_steps))
        object.__setattr__(self, "thresholds", dict(self.thresholds))

    def with_scale(self, scale: float) -> "SurfaceSpec":
        return replace(self, scale=scale)

    def threshold(self, key: str, value: Optional[float] = None) -> float:
        if value is not None:
            return value
        return self.thresholds.get(key, resolve(None, key))

    @property
    def is_standard(self) -> bool:
        return self.scale == 0.0 or self.field.is_zero()

    def to_dict(self) -> Dict:
        return {
            "degree": self.field.degree,
            "terms": [
                {"powers": list(t.powers), "coeff": [float(c) for c in t.coeff]}
                for t in self.field.terms
            ],
            "scale": self.scale,
            "flow_steps": self.flow_steps,
            "thresholds": dict(sorted(self.thresholds.items())),
        }

    def spec_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# SPHERE-LEVEL MAPS ====================================================================


def psi_sphere(spec: SurfaceSpec, x: np.ndarray, direction: Direction = Direction.FORWARD):
    time = spec.scale if Direction(direction) is Direction.FORWARD else -spec.scale
    return spec.field.flow(x, time, spec.flow_steps)


def phi_sphere(spec: SurfaceSpec, x: np.ndarray) -> np.ndarray:
    """phi on S^2, where a is x -> -x."""
    if spec.is_standard:
        return -np.asarray(x, dtype=float)
    return psi_sphere(spec, -psi_sphere(spec, x, Direction.INVERSE), Direction.FORWARD)


def phi_points(spec: SurfaceSpec, u: np.ndarray) -> np.ndarray:
    """phi on stacks of CP^1 representatives."""
    return inverse_hopf(phi_sphere(spec, hopf(u)))


def embed_points(spec: SurfaceSpec, u: np.ndarray) -> np.ndarray:
    return pi_points(u, phi_points(spec, u))


# OPERATIONS ===========================================================================


def psi_apply(spec: SurfaceSpec, u: P1Point, direction: Direction = Direction.FORWARD) -> P1Point:
    return P1Point.from_sphere(psi_sphere(spec, u.sphere(), direction))


def phi_apply(spec: SurfaceSpec, u: P1Point) -> P1Point:
    return P1Point.from_sphere(phi_sphere(spec, u.sphere()))


def embed_N(spec: SurfaceSpec, u: P1Point) -> P2Point:
    return P2Point(pi_raw(u.v, phi_points(spec, u.v)))


def surface_frames(spec: SurfaceSpec, points: np.ndarray, step: Optional[float] = None):
    """TangentFrame2 samples of N at embed_N(u) for each row of `points`.

    The frame is the central difference of embed_N along the real and imaginary
    directions of the chart centred at u.
    """
    step = resolve(step, "fd_step")
    frames = []
    for u in np.atleast_2d(points):
        chart = Chart.centered_at(u)
        w = np.array([step, -step, 1j * step, -1j * step])
        images = embed_points(spec, chart.from_chart(w))
        base = embed_points(spec, unit(u)[None, :])[0]
        images = align_phase(base, images)
        e1 = (images[0] - images[1]) / (2 * step)
        e2 = (images[2] - images[3]) / (2 * step)
        frames.append(TangentFrame2(P2Point(base), e1, e2))
    return frames
