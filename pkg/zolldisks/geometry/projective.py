"""Point arithmetic on CP^1 and CP^2.

Points are stored as unit-norm representatives and compared with the chordal
metric, so every public operation is invariant under the phase of its inputs.
The array helpers at the bottom of this module work on stacks of
representatives (last axis = homogeneous coordinates) and are what the solver
uses internally; the point-level functions wrap them for the public API.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from zolldisks.dataflows.config import resolve
from zolldisks.errors import DegenerateTangency, NearConic


# ARRAY HELPERS ========================================================================


def unit(v: np.ndarray) -> np.ndarray:
    """Normalize along the last axis."""
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def inner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hermitian product <a, b>, conjugate-linear in `a`."""
    return np.sum(np.conj(a) * b, axis=-1)


def chordal_p1(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Chordal distance on CP^1; |u1 w2 - u2 w1| equals sqrt(1 - |<u,w>|^2)."""
    cross = u[..., 0] * w[..., 1] - u[..., 1] * w[..., 0]
    scale = np.linalg.norm(u, axis=-1) * np.linalg.norm(w, axis=-1)
    return np.abs(cross) / scale


def chordal_p2(z: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Chordal distance on CP^2 as the norm of the part of z orthogonal to y."""
    z = unit(z)
    y = unit(y)
    residual = z - y * inner(y, z)[..., None]
    return np.linalg.norm(residual, axis=-1)


def antipodal_array(u: np.ndarray) -> np.ndarray:
    """[u1:u2] -> [-conj(u2):conj(u1)]; on S^2 this is x -> -x."""
    u = np.asarray(u, dtype=complex)
    return np.stack([-np.conj(u[..., 1]), np.conj(u[..., 0])], axis=-1)


def pi_raw(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """The polynomial branched cover CP^1 x CP^1 -> CP^2, unnormalized."""
    u1, u2 = u[..., 0], u[..., 1]
    v1, v2 = v[..., 0], v[..., 1]
    return np.stack(
        [1j * (u1 * v1 + u2 * v2), u1 * v1 - u2 * v2, u1 * v2 + u2 * v1], axis=-1
    )


def pi_points(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return unit(pi_raw(unit(u), unit(v)))


def conic(z: np.ndarray) -> np.ndarray:
    """q(z) = z1^2 + z2^2 + z3^2 of the unit representative."""
    z = unit(z)
    return np.sum(z * z, axis=-1)


def align_phase(ref: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Rotate the phase of `z` so that <ref, z> is real and non-negative."""
    overlap = inner(ref, z)
    mag = np.abs(overlap)
    phase = np.where(mag > 0, np.conj(overlap) / np.where(mag > 0, mag, 1.0), 1.0)
    return z * phase[..., None]


def horizontal(z: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Project `e` onto the Hermitian orthogonal complement of the unit vector `z`."""
    return e - z * inner(z, e)[..., None]


def hopf(u: np.ndarray) -> np.ndarray:
    """CP^1 -> S^2, u -> (2 Re(u1 conj u2), 2 Im(u1 conj u2), |u1|^2 - |u2|^2)."""
    u = unit(u)
    cross = u[..., 0] * np.conj(u[..., 1])
    height = np.abs(u[..., 0]) ** 2 - np.abs(u[..., 1]) ** 2
    return np.stack([2 * cross.real, 2 * cross.imag, height], axis=-1)


def inverse_hopf(x: np.ndarray) -> np.ndarray:
    """S^2 -> CP^1 representative, using the chart that avoids the nearer pole."""
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    north = x3 >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        n_scale = np.sqrt(2 * (1 + x3))
        s_scale = np.sqrt(2 * (1 - x3))
        upper = np.stack([(1 + x3) / n_scale, (x1 - 1j * x2) / n_scale], axis=-1)
        lower = np.stack([(x1 + 1j * x2) / s_scale, (1 - x3) / s_scale], axis=-1)
    return np.where(north[..., None], upper, lower)


def fibonacci_sphere(n: int, seed: Optional[int] = None) -> np.ndarray:
    """n nearly uniform points on S^2; a seed applies a random rigid rotation."""
    i = np.arange(n) + 0.5
    height = 1 - 2 * i / n
    azimuth = np.pi * (3 - np.sqrt(5)) * i
    radius = np.sqrt(1 - height**2)
    x = np.stack([radius * np.cos(azimuth), radius * np.sin(azimuth), height], axis=-1)
    if seed is not None:
        x = Rotation.random(random_state=seed).apply(x)
    return x


def fibonacci_points(n: int, seed: Optional[int] = None) -> np.ndarray:
    return inverse_hopf(fibonacci_sphere(n, seed))


def horizontal_basis(z: np.ndarray) -> np.ndarray:
    """Orthonormal complex basis (2, 3) of the complement of a single unit 3-vector."""
    _, _, vh = np.linalg.svd(np.conj(z)[None, :])
    return np.conj(vh[1:])


def tangent_real_coordinates(z: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Real 4-vectors of horizontal tangent vectors at z (rows of `vectors`)."""
    basis = horizontal_basis(z)
    coords = np.conj(basis) @ np.asarray(vectors).T
    return np.concatenate([coords.real, coords.imag], axis=0)[[0, 2, 1, 3]].T


# POINT TYPES ==========================================================================


class _ProjectivePoint:
    dim = 0

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex).reshape(self.dim)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0:
            raise ValueError(f"Not a projective point: {v}")
        object.__setattr__(self, "v", v / norm)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return bool(chordal(self, other) < resolve(None, "equality_tol"))

    __hash__ = None

    def __repr__(self):
        coords = ":".join(f"{c.real:.6g}{c.imag:+.6g}j" for c in self.v)
        return f"{type(self).__name__}[{coords}]"


@dataclass(frozen=True, eq=False, repr=False)
class P1Point(_ProjectivePoint):
    """A point of CP^1 held as a unit representative in C^2."""

    v: np.ndarray
    dim = 2

    @classmethod
    def from_sphere(cls, x) -> "P1Point":
        return cls(inverse_hopf(np.asarray(x, dtype=float)))

    def sphere(self) -> np.ndarray:
        return hopf(self.v)


@dataclass(frozen=True, eq=False, repr=False)
class P2Point(_ProjectivePoint):
    """A point of CP^2 held as a unit representative in C^3."""

    v: np.ndarray
    dim = 3


@dataclass(frozen=True, eq=False)
class TangentLine:
    """A projective line a.z = 0 tangent to Q; `a` lies on the dual conic."""

    a: np.ndarray
    tangency_point: P2Point


@dataclass(frozen=True, eq=False)
class TangentFrame2:
    """Two real tangent directions of a surface through `base`, in ambient C^3."""

    base: P2Point
    e1: np.ndarray
    e2: np.ndarray

    def __post_init__(self):
        z = self.base.v
        e1 = horizontal(z, np.asarray(self.e1, dtype=complex).reshape(3))
        e2 = horizontal(z, np.asarray(self.e2, dtype=complex).reshape(3))
        real = np.stack([np.concatenate([e1.real, e1.imag]), np.concatenate([e2.real, e2.imag])])
        if np.linalg.det(real @ real.T) <= 1e-300:
            raise ValueError("Frame vectors are linearly dependent over the reals")
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    def real_area(self) -> float:
        """Euclidean area of the parallelogram spanned by e1, e2 (as real vectors)."""
        coords = tangent_real_coordinates(self.base.v, np.stack([self.e1, self.e2]))
        return float(np.sqrt(max(np.linalg.det(coords @ coords.T), 0.0)))

    def scaled(self, factor: float) -> "TangentFrame2":
        return TangentFrame2(self.base, self.e1 * factor, self.e2 * factor)


# OPERATIONS ===========================================================================


def chordal(u, w) -> float:
    """Phase-invariant distance sqrt(1 - |<u,w>|^2) between two projective points."""
    if isinstance(u, P1Point) and isinstance(w, P1Point):
        return float(chordal_p1(u.v, w.v))
    return float(chordal_p2(u.v, w.v))


def pi_map(u: P1Point, v: P1Point) -> P2Point:
    """[i(u1v1+u2v2) : u1v1-u2v2 : u1v2+u2v1], symmetric in its arguments."""
    return P2Point(pi_raw(u.v, v.v))


def conic_value(z: P2Point) -> complex:
    return complex(conic(z.v))


def antipodal(u: P1Point) -> P1Point:
    return P1Point(antipodal_array(u.v))


def conj_c(z: P2Point) -> P2Point:
    return P2Point(np.conj(z.v))


def tangent_lines_through(
    p: P2Point, conic_tol: Optional[float] = None
) -> Tuple[TangentLine, TangentLine]:
    """The two tangent lines of Q through a point off Q.

    The incidence condition a.p = 0 cuts out a line in the dual plane; with a
    basis b1, b2 of that line the dual conic becomes the binary quadratic
    A s^2 + 2 B s t + C t^2 with A = b1.b1, B = b1.b2, C = b2.b2, whose roots
    [s:t] are [m:A] and [C:m] with m = -(B + sqrt(B^2 - AC)) (branch chosen
    against cancellation).
    """
    conic_tol = resolve(conic_tol, "conic_tol")
    if abs(conic_value(p)) < conic_tol:
        raise DegenerateTangency(f"{p} lies on the conic Q")

    _, _, vh = np.linalg.svd(p.v[None, :])
    b1, b2 = np.conj(vh[1]), np.conj(vh[2])
    A, B, C = b1 @ b1, b1 @ b2, b2 @ b2
    root = np.sqrt(B * B - A * C)
    if (np.conj(B) * root).real < 0:
        root = -root
    m = -(B + root)
    if abs(m) == 0:
        raise DegenerateTangency(f"double root at {p}")

    lines = []
    for a in (m * b1 + A * b2, C * b1 + m * b2):
        a = unit(a)
        lines.append(TangentLine(a=a, tangency_point=P2Point(a)))
    return lines[0], lines[1]


def upsilon_im_abs(frame: TangentFrame2, conic_tol: Optional[float] = None) -> float:
    """|Im Upsilon(e1, e2)|, Upsilon = det[z, e1, e2] / q(z)^(3/2) on either branch."""
    conic_tol = resolve(conic_tol, "conic_tol")
    z = frame.base.v
    q = np.sum(z * z)
    if abs(q) < conic_tol:
        raise NearConic(f"|q| = {abs(q):.3e} at {frame.base}")
    numerator = np.linalg.det(np.stack([z, frame.e1, frame.e2]))
    return float(abs((numerator / (q * np.sqrt(q))).imag))


def projective_transform(matrix: np.ndarray, frame: TangentFrame2) -> TangentFrame2:
    """Push a tangent frame forward through the projective linear map [z] -> [M z]."""
    matrix = np.asarray(matrix, dtype=complex)
    image = matrix @ frame.base.v
    scale = np.linalg.norm(image)
    return TangentFrame2(
        P2Point(image), matrix @ frame.e1 / scale, matrix @ frame.e2 / scale
    )
