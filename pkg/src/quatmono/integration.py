"""H(C)-valued line integrals along curves in R^3.

For a path gamma and a continuous Psi the two integrals are

    int dzeta Psi(zeta)   and   int Psi(zeta) dzeta,   dzeta = dx + i2 dy + i3 dz,

which differ because the algebra is not commutative.  Both are evaluated
with composite Gauss-Legendre quadrature; the integrand at each node is the
algebra product of the embedded tangent with Psi, so the result equals the
coordinate-wise definition by bilinearity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .algebra import ZERO, Quat, mul, norm
from .errors import DegenerateTriangle
from .frame import Frame, Point3, as_point

DEFAULT_NODES = 16
MORERA_RTOL = 1e-8


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    if n < 1:
        raise ValueError("need at least one quadrature node")
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


@dataclass(frozen=True)
class Polyline:
    vertices: tuple[Point3, ...]
    closed: bool = False

    def __post_init__(self):
        vs = tuple(as_point(v) for v in self.vertices)
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        object.__setattr__(self, "vertices", vs)

    def segments(self) -> list[tuple[Point3, Point3]]:
        vs = list(self.vertices)
        if self.closed and vs[0] != vs[-1]:
            vs.append(vs[0])
        return list(zip(vs[:-1], vs[1:]))

    def nodes(self, n: int):
        """(point, tangent * weight) pairs; tangent is d(point)/dt per segment."""
        t, w = gauss_legendre(n)
        out = []
        for a, b in self.segments():
            d = np.subtract(b, a)
            for tk, wk in zip(t, w):
                out.append((Point3(*(np.asarray(a) + tk * d)), tuple(wk * d)))
        return out

    def length(self) -> float:
        return sum(math.dist(a, b) for a, b in self.segments())

    def reversed(self) -> "Polyline":
        vs = list(self.vertices)
        if self.closed and vs[0] != vs[-1]:
            vs.append(vs[0])
        return Polyline(tuple(reversed(vs)), self.closed)

    def to_json_vertices(self) -> list[list[float]]:
        return [list(v) for v in self.vertices]


@dataclass(frozen=True)
class ParametricPath:
    """t in [0, 1] -> point(t), with ``tangent`` = d point / dt."""

    point: Callable[[float], Sequence[float]]
    tangent: Callable[[float], Sequence[float]]
    segments: int = 8
    closed: bool = False

    def nodes(self, n: int):
        t, w = gauss_legendre(n)
        h = 1.0 / self.segments
        out = []
        for s in range(self.segments):
            for tk, wk in zip(t, w):
                u = (s + tk) * h
                d = np.asarray(self.tangent(u), dtype=float)
                out.append((as_point(self.point(u)), tuple(wk * h * d)))
        return out

    def length(self, n: int = DEFAULT_NODES) -> float:
        return sum(math.hypot(*d) for _, d in self.nodes(n))


def _integral(path, f: Callable, frame: Frame, nodes: int, left: bool) -> Quat:
    acc = ZERO
    for p, d in path.nodes(nodes):
        dz = frame.dzeta(d)
        v = f(p)
        acc = acc + (mul(dz, v) if left else mul(v, dz))
    return acc


def integral_dzeta_left(path, f: Callable, frame: Frame, nodes: int = DEFAULT_NODES) -> Quat:
    """int dzeta Psi(zeta); ``f`` maps a point of R^3 to a Quat."""
    return _integral(path, f, frame, nodes, left=True)


def integral_dzeta_right(path, f: Callable, frame: Frame, nodes: int = DEFAULT_NODES) -> Quat:
    """int Psi(zeta) dzeta."""
    return _integral(path, f, frame, nodes, left=False)


@dataclass(frozen=True)
class Triangle:
    v0: Point3
    v1: Point3
    v2: Point3

    def __post_init__(self):
        for k in ("v0", "v1", "v2"):
            object.__setattr__(self, k, as_point(getattr(self, k)))

    def area(self) -> float:
        a = np.subtract(self.v1, self.v0)
        b = np.subtract(self.v2, self.v0)
        return 0.5 * float(np.linalg.norm(np.cross(a, b)))

    def perimeter(self) -> float:
        return (math.dist(self.v0, self.v1) + math.dist(self.v1, self.v2)
                + math.dist(self.v2, self.v0))

    def is_degenerate(self) -> bool:
        scale = max(math.dist(self.v0, self.v1), math.dist(self.v1, self.v2),
                    math.dist(self.v2, self.v0))
        return self.area() <= 1e-14 * max(scale, 1e-300) ** 2


def triangle_boundary(t: Triangle) -> Polyline:
    if t.is_degenerate():
        raise DegenerateTriangle("triangle has (numerically) zero area")
    return Polyline((t.v0, t.v1, t.v2, t.v0), closed=True)


def morera_residual(cm, t: Triangle, side: str = "right",
                    nodes_per_edge: int = DEFAULT_NODES) -> float:
    """||int over the triangle boundary of dzeta Phi|| (right) or of Phi dzeta (left)."""
    path = triangle_boundary(t)
    if side == "right":
        val = integral_dzeta_left(path, cm, cm.frame, nodes_per_edge)
    elif side == "left":
        val = integral_dzeta_right(path, cm, cm.frame, nodes_per_edge)
    else:
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    return norm(val)


def morera_scale(cm, t: Triangle, nodes_per_edge: int = DEFAULT_NODES) -> float:
    """(1 + max ||Phi|| on the boundary nodes) * perimeter."""
    path = triangle_boundary(t)
    peak = max(norm(cm(p)) for p, _ in path.nodes(nodes_per_edge))
    return (1.0 + peak) * t.perimeter()


def morera_is_zero(cm, t: Triangle, side: str = "right", nodes_per_edge: int = DEFAULT_NODES,
                   rtol: float = MORERA_RTOL) -> bool:
    return morera_residual(cm, t, side, nodes_per_edge) <= rtol * morera_scale(cm, t, nodes_per_edge)


def frame_constant(frame: Frame) -> float:
    """Smallest c with |dxi_k| <= c * |(dx, dy, dz)| for k = 1, 2.

    Since dzeta = dxi1 e1 + dxi2 e2 multiplies the rows (left) or columns
    (right) of the matrix picture of Psi by dxi1, dxi2, this c also gives
    ||dzeta Psi|| <= c ||Psi|| ds and ||Psi dzeta|| <= c ||Psi|| ds.
    """
    c = 0.0
    for a, b in ((frame.a1, frame.b1), (frame.a2, frame.b2)):
        m = np.array([[1.0, a.real, b.real], [0.0, a.imag, b.imag]])
        c = max(c, float(np.linalg.norm(m, 2)))
    return c


def integral_norm_bound(path, f: Callable, frame: Frame, side: str = "left",
                        nodes: int = DEFAULT_NODES) -> tuple[float, float, float]:
    """(lhs, rhs, c): lhs = ||integral||, rhs = c * int ||Psi|| ds.

    ``side='left'`` checks int dzeta Psi, ``'right'`` checks int Psi dzeta.
    Both sides use the same nodes, so lhs <= rhs holds for the discrete sums
    as well as for the integrals.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    c = frame_constant(frame)
    acc = ZERO
    mass = 0.0
    for p, d in path.nodes(nodes):
        v = f(p)
        dz = frame.dzeta(d)
        acc = acc + (mul(dz, v) if side == "left" else mul(v, dz))
        mass += norm(v) * math.hypot(*d)
    return norm(acc), c * mass, c


def random_triangle(rng: np.random.Generator, box, min_shape: float = 0.01) -> Triangle:
    """Random triangle with vertices in ``box``, rejecting slivers.

    ``min_shape`` bounds area / perimeter^2 from below (equilateral: 0.048).
    """
    while True:
        vs = [box.from_unit(rng.random(3)) for _ in range(3)]
        t = Triangle(*vs)
        per = t.perimeter()
        if per > 0 and t.area() / per ** 2 >= min_shape:
            return t
