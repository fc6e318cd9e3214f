"""Holomorphic charts on CP^1 and the SU(2) moves between them.

A chart is fixed by its pole representative P. Its centre is c = -a(P), so
that P = a(c) exactly, and the chart coordinate is w(u) = <P, u> / <c, u>.
The frame [c, P] lies in SU(2) and SU(2) commutes with the antipodal map, so
in every chart the antipodal map reads w -> -1/conj(w).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .projective import P1Point, antipodal_array, chordal_p1, inner, unit


@dataclass(frozen=True, eq=False)
class Mobius:
    """w -> (a + b w) / (c + d w)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __call__(self, w):
        return (self.a + self.b * w) / (self.c + self.d * w)

    def derivative(self, w):
        return (self.b * self.c - self.a * self.d) / (self.c + self.d * w) ** 2


@dataclass(frozen=True, eq=False)
class Chart:
    pole: P1Point

    @classmethod
    def centered_at(cls, center) -> "Chart":
        center = center.v if isinstance(center, P1Point) else unit(center)
        return cls(P1Point(antipodal_array(center)))

    @property
    def center(self) -> np.ndarray:
        return -antipodal_array(self.pole.v)

    def to_chart(self, u: np.ndarray) -> np.ndarray:
        return inner(self.pole.v, u) / inner(self.center, u)

    def from_chart(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        u = self.center * np.ones_like(w)[..., None] + w[..., None] * self.pole.v
        return u / np.sqrt(1 + np.abs(w) ** 2)[..., None]

    def pole_distance(self, w) -> np.ndarray:
        """Chordal distance from the point with coordinate w to the pole."""
        return 1 / np.sqrt(1 + np.abs(np.asarray(w)) ** 2)

    def transition_to(self, other: "Chart") -> Mobius:
        """The coordinate change w -> w' from this chart to `other`."""
        c, p = self.center, self.pole.v
        oc, op = other.center, other.pole.v
        return Mobius(inner(op, c), inner(op, p), inner(oc, c), inner(oc, p))

    def rotated(self, matrix: np.ndarray) -> "Chart":
        """The chart carried along by an SU(2) matrix (coordinates are preserved)."""
        return Chart(P1Point(matrix @ self.pole.v))


def local_to_chart(center: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Coordinates of u in the charts centred at each row of `center` (broadcasting)."""
    return inner(antipodal_array(center), u) / inner(center, u)


def local_from_chart(center: np.ndarray, w) -> np.ndarray:
    """Inverse of local_to_chart."""
    w = np.asarray(w, dtype=complex)
    u = center + w[..., None] * antipodal_array(center)
    return u / np.sqrt(1 + np.abs(w) ** 2)[..., None]


def su2_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """An SU(2) matrix taking [a] to [b] along the shortest rotation of S^2."""
    a = unit(a)
    b = unit(b)
    overlap = inner(a, b)
    if abs(overlap) > 0:
        b = b * np.conj(overlap) / abs(overlap)
    source = np.stack([a, antipodal_array(a)], axis=1)
    target = np.stack([b, antipodal_array(b)], axis=1)
    return target @ np.conj(source.T)


def choose_pole(samples: np.ndarray, candidates: np.ndarray) -> Tuple[P1Point, float]:
    """Among candidate poles, the one farthest (in min chordal distance) from samples."""
    distances = chordal_p1(candidates[:, None, :], samples[None, :, :])
    clearance = distances.min(axis=1)
    best = int(np.argmax(clearance))
    return P1Point(candidates[best]), float(clearance[best])
