"""Weighted Fermat-Torricelli points of planar triangles.

Two routes to the same point are provided: a general Weiszfeld iteration
for arbitrary weighted triangles, and a closed form for the isosceles
configuration with unit apex weight and equal base weights. The second
also supplies the axis coordinate maps used by the knot dynamics.

Angles are in radians throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import (
    DegenerateTriangleError,
    DomainError,
    NonConvergenceError,
    UndefinedDirectionError,
)

__all__ = [
    "Point2",
    "WeightedTriangle",
    "Floating",
    "AbsorbedAt",
    "FTCase",
    "FTResult",
    "IsoscelesSystem",
    "objective",
    "classify_case",
    "balance_residual",
    "weiszfeld",
    "isosceles_ft_angle",
    "isosceles_ft_x",
    "phi_of_x",
    "x_of_phi",
]

# twice-signed-area must exceed this times diameter**2
COLLINEAR_RTOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class WeightedTriangle:
    """Three planar vertices with positive weights.

    Vertices are indexed 1..3 in the public API (``AbsorbedAt.vertex``)
    and 0..2 in the arrays returned by :attr:`points`.
    """

    vertices: tuple[Point2, Point2, Point2]
    weights: tuple[float, float, float]

    def __post_init__(self):
        if len(self.vertices) != 3 or len(self.weights) != 3:
            raise ValueError("a triangle needs exactly three vertices and three weights")
        verts = tuple(Point2(float(p[0]), float(p[1])) for p in self.vertices)
        weights = tuple(float(w) for w in self.weights)
        if not all(math.isfinite(c) for p in verts for c in p):
            raise ValueError("vertex coordinates must be finite")
        if not all(math.isfinite(w) and w > 0 for w in weights):
            raise ValueError(f"weights must be positive and finite, got {weights}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "weights", weights)

    @property
    def points(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)

    def diameter(self) -> float:
        p = self.points
        return max(float(np.linalg.norm(p[i] - p[j])) for i, j in ((0, 1), (1, 2), (0, 2)))

    def twice_signed_area(self) -> float:
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)

    def check_nondegenerate(self) -> None:
        """Raise :class:`DegenerateTriangleError` for coincident or collinear vertices."""
        diam = self.diameter()
        if diam == 0.0 or abs(self.twice_signed_area()) < COLLINEAR_RTOL * diam**2:
            raise DegenerateTriangleError(
                f"vertices {self.vertices} are coincident or collinear"
            )


@dataclass(frozen=True)
class Floating:
    """Minimizer lies strictly inside the triangle."""


@dataclass(frozen=True)
class AbsorbedAt:
    """Minimizer coincides with vertex ``vertex`` (1-based)."""

    vertex: int


FTCase = Union[Floating, AbsorbedAt]


@dataclass(frozen=True)
class FTResult:
    point: Point2
    case: FTCase
    residual: float
    iterations: int


def _unit(frm: np.ndarray, to: np.ndarray) -> np.ndarray:
    d = to - frm
    n = math.hypot(d[0], d[1])
    if n == 0.0:
        raise UndefinedDirectionError(f"no direction from {tuple(frm)} to itself")
    return d / n


def objective(tri: WeightedTriangle, p) -> np.ndarray:
    """Weighted sum of distances from ``p`` to the vertices.

    ``p`` may be a single point or an ``(..., 2)`` array of points.
    """
    p = np.asarray(p, dtype=float)
    diff = p[..., None, :] - tri.points
    return np.sum(tri.weight_array * np.linalg.norm(diff, axis=-1), axis=-1)


def _vertex_pull(tri: WeightedTriangle, i: int) -> float:
    # norm of the weighted unit-vector sum acting on vertex i from the other two
    pts, w = tri.points, tri.weight_array
    s = sum(w[j] * _unit(pts[i], pts[j]) for j in range(3) if j != i)
    return float(np.linalg.norm(s))


def classify_case(tri: WeightedTriangle) -> FTCase:
    """Decide whether the weighted Fermat-Torricelli point floats or is absorbed.

    Vertex ``i`` absorbs the point iff the weighted pull of the other two
    vertices on it does not exceed ``w_i``. Equality counts as absorbed.

    Raises:
        DegenerateTriangleError: collinear or coincident vertices.
    """
    tri.check_nondegenerate()
    absorbed = [i for i in range(3) if _vertex_pull(tri, i) <= tri.weights[i]]
    assert len(absorbed) <= 1, f"several absorbing vertices {absorbed} for {tri}"
    if absorbed:
        return AbsorbedAt(absorbed[0] + 1)
    return Floating()


def balance_residual(tri: WeightedTriangle, p) -> float:
    """Euclidean norm of ``sum_i w_i u(p, A_i)``.

    Raises:
        UndefinedDirectionError: ``p`` coincides with a vertex.
    """
    p = np.asarray(p, dtype=float)
    pts, w = tri.points, tri.weight_array
    s = sum(w[i] * _unit(p, pts[i]) for i in range(3))
    return float(np.linalg.norm(s))


def weiszfeld(
    tri: WeightedTriangle, tol: float = 1e-12, max_iter: int = 100_000, seed=None
) -> FTResult:
    """Weighted Fermat-Torricelli point by Weiszfeld's fixed-point iteration.

    Absorbed instances return the absorbing vertex without iterating. For
    floating instances the iteration starts at ``seed`` (default: the
    weighted centroid) and stops once the step length drops below ``tol`` and the balance residual
    is at most ``tol``. If an iterate lands exactly on a vertex, the
    iteration restarts from the seed shifted by ``1e-9 * diameter``.

    Raises:
        DegenerateTriangleError: collinear or coincident vertices.
        NonConvergenceError: ``max_iter`` steps without convergence; the
            last iterate is attached as ``err.last``.
    """
    if tol <= 0 or max_iter < 1:
        raise ValueError("tol must be positive and max_iter at least 1")
    case = classify_case(tri)
    pts, w = tri.points, tri.weight_array
    if isinstance(case, AbsorbedAt):
        i = case.vertex - 1
        excess = max(_vertex_pull(tri, i) - w[i], 0.0)
        return FTResult(tri.vertices[i], case, excess, 0)

    seed = w @ pts / w.sum() if seed is None else np.asarray(seed, dtype=float)
    shift = 1e-9 * tri.diameter() * np.array([math.cos(1.0), math.sin(1.0)])
    p = seed.copy()
    restarts = 0
    for k in range(1, max_iter + 1):
        dist = np.linalg.norm(pts - p, axis=1)
        if np.any(dist == 0.0):
            restarts += 1
            if restarts > 3:
                raise NonConvergenceError("iterates keep landing on a vertex", last=Point2(*p))
            p = seed + restarts * shift
            continue
        coef = w / dist
        new = coef @ pts / coef.sum()
        step = float(np.linalg.norm(new - p))
        p = new
        if step < tol:
            res = balance_residual(tri, p)
            if res <= tol:
                return FTResult(Point2(float(p[0]), float(p[1])), case, res, k)
    raise NonConvergenceError(
        f"Weiszfeld iteration did not converge in {max_iter} steps", last=Point2(*p)
    )


@dataclass(frozen=True)
class IsoscelesSystem:
    """Isosceles pulley board with the knot on the symmetry axis.

    ``a`` is the common length of the sides from the apex ``A1``, ``phi0``
    the half apex angle, ``w2`` the equal weight hanging at both base
    vertices (the apex weight is 1) and ``m0`` the knot mass.

    Coordinates: ``A1 = (0, h)``, ``A2 = (-b, 0)``, ``A3 = (b, 0)`` and the
    foot of the altitude ``A4`` is the origin. Axis position ``x`` is the
    distance from ``A1`` towards ``A4``.
    """

    a: float
    phi0: float
    w2: float
    m0: float = 1.0

    def __post_init__(self):
        for name in ("a", "phi0", "w2", "m0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.a <= 0 or self.w2 <= 0 or self.m0 <= 0:
            raise ValueError("a, w2 and m0 must be positive")
        if not 0 < self.phi0 < math.pi / 2:
            raise ValueError(f"phi0 must lie in (0, pi/2), got {self.phi0}")

    @classmethod
    def from_degrees(cls, a: float, phi0_deg: float, w2: float, m0: float = 1.0) -> IsoscelesSystem:
        return cls(a, math.radians(phi0_deg), w2, m0)

    @property
    def h(self) -> float:
        """Altitude A1A4."""
        return self.a * math.cos(self.phi0)

    @property
    def b(self) -> float:
        """Half base A4A3."""
        return self.a * math.sin(self.phi0)

    def triangle(self) -> WeightedTriangle:
        h, b = self.h, self.b
        return WeightedTriangle(
            (Point2(0.0, h), Point2(-b, 0.0), Point2(b, 0.0)), (1.0, self.w2, self.w2)
        )

    def axis_point(self, x: float) -> Point2:
        return Point2(0.0, self.h - x)

    def base_distance(self, x):
        """Distance from the axis point at ``x`` to either base vertex."""
        return np.hypot(self.h - np.asarray(x, dtype=float), self.b)


def isosceles_ft_angle(w2: float) -> float:
    """Angle A4 O A3 at the equilibrium point, ``arccos(1/(2 w2**2) - 1) / 2``.

    Equivalently the angle ``alpha`` with ``2 w2 cos(alpha) = 1``.

    Raises:
        DomainError: ``w2 < 1/2``; the apex then absorbs the point.
    """
    if not w2 >= 0.5:
        raise DomainError(f"w2 = {w2} < 1/2 has no interior equilibrium on the axis")
    alpha = math.acos(1.0 / (2.0 * w2 * w2) - 1.0) / 2.0
    assert abs(2.0 * w2 * math.cos(alpha) - 1.0) < 1e-12 * max(1.0, w2)
    return alpha


def isosceles_ft_x(sys: IsoscelesSystem) -> float:
    """Distance A1O of the weighted Fermat-Torricelli point along the axis.

    Raises:
        DomainError: ``w2 < 1/2`` or ``phi0 >= alpha`` (point not interior).
    """
    alpha = isosceles_ft_angle(sys.w2)
    if not sys.phi0 < alpha:
        raise DomainError(
            f"phi0 = {sys.phi0:.6g} rad is not below the equilibrium angle {alpha:.6g} rad"
        )
    return sys.h - sys.b * math.cos(alpha) / math.sin(alpha)


def phi_of_x(sys: IsoscelesSystem, x):
    """Angle A4 S A3 seen from the axis point ``S`` with ``A1S = x``.

    Uses ``atan2(b, h - x)`` so the value stays smooth through ``x = h``
    (where it equals pi/2) and beyond. Accepts scalars or arrays.
    """
    return np.arctan2(sys.b, sys.h - np.asarray(x, dtype=float))


def x_of_phi(sys: IsoscelesSystem, phi):
    """Inverse of :func:`phi_of_x`: ``a cos(phi0) - a sin(phi0) cot(phi)``.

    Raises:
        DomainError: any ``phi`` outside the open interval (0, pi).
    """
    phi = np.asarray(phi, dtype=float)
    s = np.sin(phi)
    if np.any(~((phi > 0) & (phi < math.pi))) or np.any(s == 0):
        raise DomainError("phi must lie strictly between 0 and pi")
    return sys.h - sys.b * np.cos(phi) / s
