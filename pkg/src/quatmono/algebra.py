"""Arithmetic in the algebra H(C) of complex quaternions.

Elements are stored in the idempotent basis {e1, e2, e3, e4}::

    e1 = (1 + iI)/2,  e2 = (1 - iI)/2,  e3 = (iJ - K)/2,  e4 = (iJ + K)/2

in which the multiplication table is

    .  | e1  e2  e3  e4
    ---+----------------
    e1 | e1  0   e3  0
    e2 | 0   e2  0   e4
    e3 | 0   e3  0   e1
    e4 | e4  0   e2  0

and the unit is 1 = e1 + e2.  The map e1->E11, e2->E22, e3->E12, e4->E21
is an isomorphism onto 2x2 complex matrices; :class:`MatrixRep` uses it as
an independent check of :func:`mul`.

Components are duck-typed: ``complex`` on the floating path,
:class:`~quatmono.exact.ExactComplex` (or ``Fraction``/``int``) when exact
results are wanted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularError

DEFAULT_TOL = 1e-10
SINGULAR_RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class Quat:
    """Element q1*e1 + q2*e2 + q3*e3 + q4*e4 of H(C)."""

    q1: complex = 0j
    q2: complex = 0j
    q3: complex = 0j
    q4: complex = 0j

    def __iter__(self):
        return iter((self.q1, self.q2, self.q3, self.q4))

    def components(self) -> tuple:
        return (self.q1, self.q2, self.q3, self.q4)

    @classmethod
    def from_array(cls, arr) -> "Quat":
        a = np.asarray(arr, dtype=complex).reshape(4)
        return cls(*(complex(v) for v in a))

    def to_array(self) -> np.ndarray:
        return np.array([complex(v) for v in self], dtype=complex)

    def __add__(self, other):
        if not isinstance(other, Quat):
            return NotImplemented
        return Quat(self.q1 + other.q1, self.q2 + other.q2,
                    self.q3 + other.q3, self.q4 + other.q4)

    def __sub__(self, other):
        if not isinstance(other, Quat):
            return NotImplemented
        return Quat(self.q1 - other.q1, self.q2 - other.q2,
                    self.q3 - other.q3, self.q4 - other.q4)

    def __neg__(self):
        return Quat(-self.q1, -self.q2, -self.q3, -self.q4)

    def __mul__(self, other):
        if isinstance(other, Quat):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # Scalars are central, so left and right scaling agree.
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Quat):
            return NotImplemented
        return Quat(self.q1 / other, self.q2 / other, self.q3 / other, self.q4 / other)

    def scale(self, c) -> "Quat":
        return Quat(c * self.q1, c * self.q2, c * self.q3, c * self.q4)

    def isclose(self, other: "Quat", tol: float = DEFAULT_TOL) -> bool:
        return norm(self - other) <= tol

    def __repr__(self):
        return f"Quat({self.q1!r}, {self.q2!r}, {self.q3!r}, {self.q4!r})"


ZERO = Quat(0j, 0j, 0j, 0j)
E1 = Quat(1 + 0j, 0j, 0j, 0j)
E2 = Quat(0j, 1 + 0j, 0j, 0j)
E3 = Quat(0j, 0j, 1 + 0j, 0j)
E4 = Quat(0j, 0j, 0j, 1 + 0j)
ONE = Quat(1 + 0j, 1 + 0j, 0j, 0j)
BASIS = (E1, E2, E3, E4)


def mul(a: Quat, b: Quat) -> Quat:
    """Product ``a*b`` according to the idempotent-basis table."""
    a1, a2, a3, a4 = a.q1, a.q2, a.q3, a.q4
    b1, b2, b3, b4 = b.q1, b.q2, b.q3, b.q4
    return Quat(
        a1 * b1 + a3 * b4,
        a2 * b2 + a4 * b3,
        a1 * b3 + a3 * b2,
        a2 * b4 + a4 * b1,
    )


@dataclass(frozen=True, slots=True)
class QuatStd:
    """Element s0 + sI*I + sJ*J + sK*K in the standard basis."""

    s0: complex = 0j
    sI: complex = 0j
    sJ: complex = 0j
    sK: complex = 0j

    def __iter__(self):
        return iter((self.s0, self.sI, self.sJ, self.sK))


def to_std(a: Quat) -> QuatStd:
    q1, q2, q3, q4 = a
    return QuatStd(
        (q1 + q2) / 2,
        1j * (q1 - q2) / 2,
        1j * (q3 + q4) / 2,
        (q4 - q3) / 2,
    )


def from_std(s: QuatStd) -> Quat:
    # I = -i e1 + i e2,  J = -i (e3 + e4),  K = e4 - e3
    s0, sI, sJ, sK = s
    return Quat(
        s0 - 1j * sI,
        s0 + 1j * sI,
        -1j * sJ - sK,
        -1j * sJ + sK,
    )


@dataclass(frozen=True, slots=True)
class MatrixRep:
    """2x2 complex matrix [[m11, m12], [m21, m22]]."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __matmul__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def to_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)


def to_matrix(a: Quat) -> MatrixRep:
    return MatrixRep(a.q1, a.q3, a.q4, a.q2)


def from_matrix(m: MatrixRep) -> Quat:
    return Quat(m.m11, m.m22, m.m12, m.m21)


def f1(a: Quat):
    return a.q1 + a.q3


def f2(a: Quat):
    return a.q2 + a.q4


def f1_hat(a: Quat):
    return a.q1 + a.q4


def f2_hat(a: Quat):
    return a.q2 + a.q3


class Ideal(enum.Enum):
    """Maximal one-sided ideals.

    I1, I2 absorb multiplication on the right (x in I => x*y in I);
    I1_HAT, I2_HAT absorb multiplication on the left (y*x in I).
    """

    I1 = "I1"
    I2 = "I2"
    I1_HAT = "I1_hat"
    I2_HAT = "I2_hat"


# components that must vanish for membership
_IDEAL_ZEROS = {
    Ideal.I1: (0, 2),
    Ideal.I2: (1, 3),
    Ideal.I1_HAT: (0, 3),
    Ideal.I2_HAT: (1, 2),
}


def ideal_member(a: Quat, which: Ideal | str, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    which = Ideal(which)
    comps = a.components()
    return all(abs(comps[k]) <= tol for k in _IDEAL_ZEROS[which])


def split_right(a: Quat) -> tuple[Quat, Quat]:
    """Unique decomposition a = x + y with x in I1, y in I2."""
    return Quat(0j, a.q2, 0j, a.q4), Quat(a.q1, 0j, a.q3, 0j)


def split_left(a: Quat) -> tuple[Quat, Quat]:
    """Unique decomposition a = x + y with x in I1_hat, y in I2_hat."""
    return Quat(0j, a.q2, a.q3, 0j), Quat(a.q1, 0j, 0j, a.q4)


def norm(a: Quat) -> float:
    """Component Euclidean norm sqrt(sum |q_k|^2)."""
    return math.sqrt(sum(abs(q) ** 2 for q in a))


def det(a: Quat):
    return a.q1 * a.q2 - a.q3 * a.q4


def inverse(a: Quat) -> Quat:
    """Two-sided inverse; raises :class:`SingularError` when none exists."""
    d = det(a)
    n = norm(a)
    if n == 0 or abs(d) < SINGULAR_RTOL * n * n:
        raise SingularError(f"element is not invertible (|det| = {abs(d):.3g})")
    return Quat(a.q2 / d, a.q1 / d, -a.q3 / d, -a.q4 / d)
