"""Geometry of the three-dimensional subspace E3 = span_R{1, i2, i3}.

A :class:`Frame` fixes i2 = a1 e1 + a2 e2 and i3 = b1 e1 + b2 e2.  A point
(x, y, z) of R^3 corresponds to zeta = x + y i2 + z i3 = xi1 e1 + xi2 e2 with

    xi1 = x + y a1 + z b1,     xi2 = x + y a2 + z b2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .algebra import Quat, ONE
from .errors import DegeneratePencil
from .jsonfmt import dumps17

DEGENERACY_TUBE = 1e-6


class Point3(NamedTuple):
    x: float
    y: float
    z: float

    def __add__(self, other):
        return Point3(self.x + other[0], self.y + other[1], self.z + other[2])

    def __sub__(self, other):
        return Point3(self.x - other[0], self.y - other[1], self.z - other[2])

    def scaled(self, t) -> "Point3":
        return Point3(t * self.x, t * self.y, t * self.z)

    def norm(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)


def as_point(p) -> Point3:
    if isinstance(p, Point3):
        return p
    x, y, z = p
    return Point3(float(x), float(y), float(z))


@dataclass(frozen=True)
class ValidationReport:
    independent: bool
    surjective: bool
    rank: int
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.independent and self.surjective


@dataclass(frozen=True)
class Frame:
    a1: complex
    a2: complex
    b1: complex
    b2: complex

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"frame coefficient {name} is not finite")
            object.__setattr__(self, name, v)

    @property
    def i1(self) -> Quat:
        return ONE

    @property
    def i2(self) -> Quat:
        return Quat(self.a1, self.a2, 0j, 0j)

    @property
    def i3(self) -> Quat:
        return Quat(self.b1, self.b2, 0j, 0j)

    def gradient_rows(self) -> np.ndarray:
        """Complex gradients of xi1, xi2 w.r.t. (x, y, z), one per row."""
        return np.array([[1, self.a1, self.b1], [1, self.a2, self.b2]], dtype=complex)

    def dzeta(self, d) -> Quat:
        """Embedding dx + dy*i2 + dz*i3 of a displacement vector."""
        dx, dy, dz = d
        return Quat(dx + dy * self.a1 + dz * self.b1, dx + dy * self.a2 + dz * self.b2, 0j, 0j)

    def to_json(self) -> str:
        return dumps17({k: [getattr(self, k).real, getattr(self, k).imag]
                        for k in ("a1", "a2", "b1", "b2")})

    @classmethod
    def from_dict(cls, d: dict) -> "Frame":
        vals = {}
        for k in ("a1", "a2", "b1", "b2"):
            if k not in d:
                raise KeyError(f"frame is missing {k!r}")
            re, im = d[k]
            vals[k] = complex(float(re), float(im))
        return cls(**vals)

    @classmethod
    def from_json(cls, text: str) -> "Frame":
        return cls.from_dict(json.loads(text))

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "Frame":
        """A random frame that passes :func:`validate`."""
        while True:
            c = rng.normal(size=8) * scale
            fr = cls(complex(c[0], c[1]), complex(c[2], c[3]),
                     complex(c[4], c[5]), complex(c[6], c[7]))
            rep = validate(fr)
            if rep.ok and _column_condition(fr) < 1e6:
                return fr


# Frame of the worked example: xi1 = x + iy + (1+i)z, xi2 = x - iy + (1-i)z.
EXAMPLE_FRAME = Frame(1j, -1j, 1 + 1j, 1 - 1j)


def _column_condition(fr: Frame) -> float:
    s = np.linalg.svd(fr.gradient_rows().T, compute_uv=False)
    return s[0] / s[-1] if s[-1] > 0 else math.inf


def real_coordinate_matrix(fr: Frame) -> np.ndarray:
    """Rows: real coordinates (Re q1, Im q1, Re q2, Im q2) of 1, i2, i3."""
    rows = []
    for q in (ONE, fr.i2, fr.i3):
        rows.append([q.q1.real, q.q1.imag, q.q2.real, q.q2.imag])
    return np.array(rows, dtype=float)


def validate(fr: Frame) -> ValidationReport:
    m = real_coordinate_matrix(fr)
    rank = int(np.linalg.matrix_rank(m, tol=1e-12 * max(1.0, np.abs(m).max())))
    independent = rank == 3
    surjective = (fr.a1.imag != 0 or fr.b1.imag != 0) and (fr.a2.imag != 0 or fr.b2.imag != 0)
    msgs = []
    if not independent:
        msgs.append(f"1, i2, i3 are linearly dependent over R (rank {rank})")
    if not surjective:
        bad = [k for k, (a, b) in ((1, (fr.a1, fr.b1)), (2, (fr.a2, fr.b2)))
               if a.imag == 0 and b.imag == 0]
        msgs.append("f_k(E3) != C for k in " + ", ".join(map(str, bad)))
    return ValidationReport(independent, surjective, rank, tuple(msgs))


def xi(fr: Frame, p) -> tuple[complex, complex]:
    x, y, z = p
    return x + y * fr.a1 + z * fr.b1, x + y * fr.a2 + z * fr.b2


def embed(fr: Frame, p) -> Quat:
    x1, x2 = xi(fr, p)
    return Quat(x1, x2, 0j, 0j)


@dataclass(frozen=True)
class DegeneracyLine:
    anchor: Point3
    direction: tuple[float, float, float]
    label: str

    def point(self, t: float) -> Point3:
        d = self.direction
        return Point3(self.anchor.x + t * d[0], self.anchor.y + t * d[1], self.anchor.z + t * d[2])


def _line(a: complex, b: complex, label: str) -> DegeneracyLine:
    r1 = np.array([1.0, a.real, b.real])
    r2 = np.array([0.0, a.imag, b.imag])
    d = np.cross(r1, r2)
    n = np.linalg.norm(d)
    if n < 1e-14:
        raise DegeneratePencil(f"{label}: Im a = Im b = 0, the solution set is a plane")
    d = d / n
    first = d[np.flatnonzero(np.abs(d) > 1e-15)[0]]
    if first < 0:
        d = -d
    return DegeneracyLine(Point3(0.0, 0.0, 0.0), tuple(float(v) for v in d), label)


def degeneracy_lines(fr: Frame) -> tuple[DegeneracyLine, DegeneracyLine]:
    """The lines L1 (xi1 = 0) and L2 (xi2 = 0) of non-invertible points."""
    return _line(fr.a1, fr.b1, "L1"), _line(fr.a2, fr.b2, "L2")


def is_degenerate(fr: Frame, p, tol: float = DEGENERACY_TUBE) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    x1, x2 = xi(fr, p)
    return min(abs(x1), abs(x2)) <= tol


@dataclass(frozen=True)
class DomainBox:
    min: Point3
    max: Point3 = field()

    def __post_init__(self):
        lo, hi = as_point(self.min), as_point(self.max)
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError("box min must not exceed max componentwise")
        object.__setattr__(self, "min", lo)
        object.__setattr__(self, "max", hi)

    @property
    def center(self) -> Point3:
        return Point3(*((a + b) / 2 for a, b in zip(self.min, self.max)))

    @property
    def widths(self) -> np.ndarray:
        return np.array(self.max) - np.array(self.min)

    def contains(self, p, margin: float = 0.0) -> bool:
        return all(a + margin <= v <= b - margin for a, v, b in zip(self.min, p, self.max))

    def distance_to_boundary(self, p) -> float:
        return min(min(v - a, b - v) for a, v, b in zip(self.min, p, self.max))

    def from_unit(self, u) -> Point3:
        lo = np.array(self.min)
        return as_point(lo + np.asarray(u, dtype=float) * self.widths)

    def to_dict(self) -> dict:
        return {"min": list(self.min), "max": list(self.max)}

    @classmethod
    def from_dict(cls, d: dict) -> "DomainBox":
        return cls(as_point(d["min"]), as_point(d["max"]))


def image_domains(fr: Frame, box: DomainBox, n: int) -> tuple[np.ndarray, np.ndarray]:
    """xi1 and xi2 images of an n x n x n grid over ``box`` (flattened)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    axes = []
    for lo, hi in zip(box.min, box.max):
        axes.append(np.array([(lo + hi) / 2]) if n == 1 else np.linspace(lo, hi, n))
    X, Y, Z = np.meshgrid(*axes, indexing="ij")
    X, Y, Z = X.ravel(), Y.ravel(), Z.ravel()
    return X + Y * fr.a1 + Z * fr.b1, X + Y * fr.a2 + Z * fr.b2
