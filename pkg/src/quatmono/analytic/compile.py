"""Turn expression trees into nested closures for fast repeated evaluation."""

from __future__ import annotations

import cmath
from typing import Callable, Sequence

from ..errors import EvaluationError, PoleError
from .expr import POLE_THRESHOLD, Add, Call, Div, Expr, Mul, Neg, Num, Pow, Sub, Var

_FN = {"exp": cmath.exp, "sin": cmath.sin, "cos": cmath.cos}


def _build(e: Expr, index: dict[str, int]) -> Callable:
    if isinstance(e, Num):
        v = e.value
        return lambda a: v
    if isinstance(e, Var):
        try:
            k = index[e.name]
        except KeyError:
            raise EvaluationError(f"variable {e.name!r} is not an argument") from None
        return lambda a: a[k]
    if isinstance(e, Neg):
        f = _build(e.arg, index)
        return lambda a: -f(a)
    if isinstance(e, Pow):
        f, m = _build(e.base, index), e.exp
        if m >= 0:
            return lambda a: f(a) ** m

        def neg_pow(a):
            d = f(a) ** -m
            if abs(d) < POLE_THRESHOLD:
                raise PoleError("negative power of a value near zero")
            return 1 / d
        return neg_pow
    if isinstance(e, Call):
        f, g = _build(e.arg, index), _FN[e.func]
        name = e.func

        def call(a):
            try:
                return g(f(a))
            except OverflowError as exc:
                raise EvaluationError(f"{name} overflowed") from exc
        return call
    l, r = _build(e.left, index), _build(e.right, index)
    if isinstance(e, Add):
        return lambda a: l(a) + r(a)
    if isinstance(e, Sub):
        return lambda a: l(a) - r(a)
    if isinstance(e, Mul):
        return lambda a: l(a) * r(a)
    if isinstance(e, Div):
        def div(a):
            d = r(a)
            if abs(d) < POLE_THRESHOLD:
                raise PoleError("division by a value of modulus below 1e-300")
            return l(a) / d
        return div
    raise TypeError(f"not an expression node: {e!r}")


def lambdify(e: Expr, names: Sequence[str]) -> Callable[..., complex]:
    """``lambdify(e, ("xi1", "xi2"))(u, v)`` evaluates ``e`` at xi1=u, xi2=v."""
    f = _build(e, {n: k for k, n in enumerate(names)})
    return lambda *args: f(args)
