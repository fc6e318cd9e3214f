"""Polynomial tangent fields on S^2 and their fixed-step RK4 flows."""

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from zolldisks.dataflows.config import resolve


@dataclass(frozen=True)
class FieldTerm:
    """coeff * x^i y^j z^k with coeff a constant vector of R^3."""

    powers: Tuple[int, int, int]
    coeff: Tuple[float, float, float]

    @property
    def degree(self) -> int:
        return sum(self.powers)


@dataclass(frozen=True, eq=False)
class SphereField:
    """V(x) = sum of FieldTerms; the flow uses its tangential part W(x) = V - <V,x> x."""

    terms: Tuple[FieldTerm, ...] = field(default_factory=tuple)
    max_degree: int = None

    def __post_init__(self):
        max_degree = resolve(self.max_degree, "max_field_degree")
        terms = tuple(
            t if isinstance(t, FieldTerm) else FieldTerm(tuple(t[0]), tuple(t[1]))
            for t in self.terms
        )
        for term in terms:
            if len(term.powers) != 3 or len(term.coeff) != 3:
                raise ValueError(f"Malformed field term {term}")
            if min(term.powers) < 0 or term.degree > max_degree:
                raise ValueError(f"Term degree {term.degree} outside [0, {max_degree}]")
            if not np.all(np.isfinite(term.coeff)):
                raise ValueError(f"Non-finite coefficient in {term}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "max_degree", max_degree)
        powers = np.array([t.powers for t in terms], dtype=int).reshape(-1, 3)
        coeffs = np.array([t.coeff for t in terms], dtype=float).reshape(-1, 3)
        object.__setattr__(self, "_powers", powers)
        object.__setattr__(self, "_coeffs", coeffs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Sequence[int], Sequence[float]]]) -> "SphereField":
        return cls(tuple(FieldTerm(tuple(p), tuple(float(c) for c in v)) for p, v in pairs))

    @property
    def degree(self) -> int:
        return max((t.degree for t in self.terms), default=0)

    def is_zero(self) -> bool:
        return not np.any(self._coeffs)

    def ambient(self, x: np.ndarray) -> np.ndarray:
        """V(x) for points x of shape (..., 3)."""
        out = np.zeros(np.shape(x), dtype=float)
        for (i, j, k), coeff in zip(self._powers, self._coeffs):
            monomial = x[..., 0] ** i * x[..., 1] ** j * x[..., 2] ** k
            out += monomial[..., None] * coeff
        return out

    def tangent(self, x: np.ndarray) -> np.ndarray:
        v = self.ambient(x)
        return v - np.sum(v * x, axis=-1, keepdims=True) * x

    def flow(self, x: np.ndarray, time: float, steps: int) -> np.ndarray:
        """Time-`time` flow of W by classical RK4, re-projected onto S^2 every step."""
        x = np.array(x, dtype=float)
        if time == 0 or self.is_zero():
            return x / np.linalg.norm(x, axis=-1, keepdims=True)
        h = time / steps
        for _ in range(steps):
            # ----------- four stages of the classical Runge-Kutta step -----------
            k1 = self.tangent(x)
            k2 = self.tangent(x + 0.5 * h * k1)
            k3 = self.tangent(x + 0.5 * h * k2)
            k4 = self.tangent(x + h * k3)
            x = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            x /= np.linalg.norm(x, axis=-1, keepdims=True)
        return x
