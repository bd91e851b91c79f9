"""Power series and Taylor coefficients.

Taylor coefficients of expression trees are computed by propagating
truncated series (jets) through the tree, which costs O(n^2) per node
rather than the exponential blow-up of differentiating a product n times.
Repeated symbolic differentiation remains available as
:func:`taylor_coeffs_symbolic` and serves as the cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import PoleError, RadiusExceeded
from .expr import (POLE_THRESHOLD, Add, Call, Div, Expr, Mul, Neg, Num, Pow, Sub, Var,
                   evaluate, simplify, diff, variables)

MAX_ORDER = 32


@dataclass(frozen=True)
class PowerSeries:
    """sum_k coeffs[k] * (z - center)**k, valid for |z - center| < radius."""

    center: complex
    coeffs: tuple
    radius: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def _check(self, z):
        if not abs(z - self.center) < self.radius:
            raise RadiusExceeded(
                f"|z - center| = {abs(z - self.center):.6g} is not below radius {self.radius:.6g}")

    def __call__(self, z):
        self._check(z)
        h = z - self.center
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * h + c
        return acc

    def derivative(self) -> "PowerSeries":
        return PowerSeries(self.center, [k * c for k, c in enumerate(self.coeffs)][1:] or [0j],
                           self.radius)

    def recenter(self, new_center) -> "PowerSeries":
        """Exact re-expansion of the (finite) series about ``new_center``."""
        new_center = complex(new_center)
        self._check(new_center)
        d = new_center - self.center
        n = len(self.coeffs)
        out = []
        for k in range(n):
            s = 0j
            for j in range(k, n):
                s += self.coeffs[j] * math.comb(j, k) * d ** (j - k)
            out.append(s)
        return PowerSeries(new_center, out, self.radius - abs(d))

    def to_expr(self, var: str = "z") -> Expr:
        shift: Expr = Var(var) if self.center == 0 else Sub(Var(var), Num(self.center))
        acc: Expr | None = None
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term: Expr = Num(c) if k == 0 else Mul(Num(c), Pow(shift, k))
            acc = term if acc is None else Add(acc, term)
        return simplify(acc if acc is not None else Num(0))


# -- jet arithmetic -----------------------------------------------------------

def _mul(a, b, n):
    return [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1)]


def _recip(b, n):
    if abs(b[0]) < POLE_THRESHOLD:
        raise PoleError("reciprocal of a series with vanishing constant term")
    c = [1 / b[0]]
    for k in range(1, n + 1):
        c.append(-sum(b[j] * c[k - j] for j in range(1, k + 1)) / b[0])
    return c


def _pow(a, m, n):
    if m < 0:
        return _pow(_recip(a, n), -m, n)
    result = [1 + 0j] + [0j] * n
    base = list(a)
    while m:
        if m & 1:
            result = _mul(result, base, n)
        base = _mul(base, base, n)
        m >>= 1
    return result


def _exp(u, n):
    y = [cmath.exp(u[0])]
    for k in range(1, n + 1):
        y.append(sum(j * u[j] * y[k - j] for j in range(1, k + 1)) / k)
    return y


def _sincos(u, n):
    s, c = [cmath.sin(u[0])], [cmath.cos(u[0])]
    for k in range(1, n + 1):
        s.append(sum(j * u[j] * c[k - j] for j in range(1, k + 1)) / k)
        c.append(-sum(j * u[j] * s[k - j] for j in range(1, k + 1)) / k)
    return s, c


def jet(e: Expr, var: str, point: Mapping[str, complex], n: int) -> list[complex]:
    """Coefficients of the expansion of ``e`` in ``var`` about ``point``.

    Other variables are held at their values in ``point``.
    """
    if isinstance(e, Num):
        return [e.value] + [0j] * n
    if isinstance(e, Var):
        v = complex(point[e.name])
        if e.name == var:
            return ([v, 1 + 0j] + [0j] * n)[: n + 1]
        return [v] + [0j] * n
    if isinstance(e, Neg):
        return [-c for c in jet(e.arg, var, point, n)]
    if isinstance(e, (Add, Sub)):
        a, b = jet(e.left, var, point, n), jet(e.right, var, point, n)
        if isinstance(e, Add):
            return [x + y for x, y in zip(a, b)]
        return [x - y for x, y in zip(a, b)]
    if isinstance(e, Mul):
        return _mul(jet(e.left, var, point, n), jet(e.right, var, point, n), n)
    if isinstance(e, Div):
        return _mul(jet(e.left, var, point, n), _recip(jet(e.right, var, point, n), n), n)
    if isinstance(e, Pow):
        return _pow(jet(e.base, var, point, n), e.exp, n)
    if isinstance(e, Call):
        u = jet(e.arg, var, point, n)
        if e.func == "exp":
            return _exp(u, n)
        s, c = _sincos(u, n)
        return s if e.func == "sin" else c
    raise TypeError(f"not an expression node: {e!r}")


def _only_var(e: Expr) -> str:
    names = variables(e)
    if len(names) > 1:
        raise ValueError(f"expected a single-variable expression, got {sorted(names)}")
    return next(iter(names)) if names else "z"


def taylor_coeffs(f, center, n: int) -> list[complex]:
    """c_0..c_n with c_k = f^(k)(center)/k!."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ORDER:
        raise ValueError(f"Taylor order {n} exceeds the supported maximum {MAX_ORDER}")
    center = complex(center)
    if isinstance(f, PowerSeries):
        c = list(f.recenter(center).coeffs)
        return (c + [0j] * (n + 1))[: n + 1]
    if isinstance(f, Expr):
        var = _only_var(f)
        return jet(f, var, {var: center}, n)
    raise TypeError(f"unsupported analytic function type {type(f).__name__}")


def taylor_coeffs_symbolic(f: Expr, center, n: int) -> list[complex]:
    """Same as :func:`taylor_coeffs` via n-fold symbolic differentiation."""
    var = _only_var(f)
    out = []
    g = f
    for k in range(n + 1):
        out.append(evaluate(g, {var: complex(center)}) / math.factorial(k))
        g = simplify(diff(g, var))
    return out


def eval_poly(coeffs: Sequence[complex], h) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * h + c
    return acc
