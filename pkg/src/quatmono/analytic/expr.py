"""Expression trees for analytic functions of complex variables.

Nodes are frozen dataclasses, so structurally equal trees compare equal
and hash alike.  The same tree type serves single-variable functions
(variable ``z``) and the two-variable component expressions in ``xi1``,
``xi2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from ..errors import EvaluationError, PoleError

POLE_THRESHOLD = 1e-300
FUNCTIONS = ("exp", "sin", "cos")


class Expr:
    """Base class; subclasses are the concrete node types below."""

    __slots__ = ()

    def __call__(self, z):
        """Evaluate a one-variable expression; the variable may be any name."""
        names = variables(self)
        if len(names) > 1:
            raise EvaluationError(f"expression has several variables: {sorted(names)}")
        name = next(iter(names)) if names else "z"
        return evaluate(self, {name: z})

    def __str__(self):
        return to_string(self)

    def derivative(self, var: str = "z") -> "Expr":
        return simplify(diff(self, var))


@dataclass(frozen=True, slots=True)
class Num(Expr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exp: int

    def __post_init__(self):
        if not isinstance(self.exp, int) or isinstance(self.exp, bool):
            raise TypeError("Pow exponent must be an int")


@dataclass(frozen=True, slots=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")


ZERO = Num(0)
ONE = Num(1)
_BINARY = (Add, Sub, Mul, Div)


def variables(e: Expr) -> set[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            out.add(n.name)
        elif isinstance(n, (Neg, Call)):
            stack.append(n.arg)
        elif isinstance(n, Pow):
            stack.append(n.base)
        elif isinstance(n, _BINARY):
            stack.extend((n.left, n.right))
    return out


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Num):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, mapping))
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, mapping))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, mapping), e.exp)
    return type(e)(substitute(e.left, mapping), substitute(e.right, mapping))


# -- evaluation ---------------------------------------------------------------

_CMATH = {"exp": cmath.exp, "sin": cmath.sin, "cos": cmath.cos}


def _divide(num, den):
    if abs(den) < POLE_THRESHOLD:
        raise PoleError("division by a value of modulus below 1e-300")
    return num / den


def evaluate(e: Expr, env: Mapping[str, object], const: Callable | None = None):
    """Evaluate ``e`` with variable values from ``env``.

    ``const`` converts literal values; pass ``ExactComplex.coerce`` to keep
    rational inputs exact.  Transcendental calls always go through ``cmath``.
    """
    if isinstance(e, Num):
        return const(e.value) if const else e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise EvaluationError(f"no value bound for variable {e.name!r}") from None
    if isinstance(e, Neg):
        return -evaluate(e.arg, env, const)
    if isinstance(e, Add):
        return evaluate(e.left, env, const) + evaluate(e.right, env, const)
    if isinstance(e, Sub):
        return evaluate(e.left, env, const) - evaluate(e.right, env, const)
    if isinstance(e, Mul):
        return evaluate(e.left, env, const) * evaluate(e.right, env, const)
    if isinstance(e, Div):
        return _divide(evaluate(e.left, env, const), evaluate(e.right, env, const))
    if isinstance(e, Pow):
        b = evaluate(e.base, env, const)
        if e.exp < 0:
            return _divide(const(1) if const else 1, b ** -e.exp)
        return b ** e.exp
    if isinstance(e, Call):
        arg = evaluate(e.arg, env, const)
        try:
            return _CMATH[e.func](complex(arg))
        except OverflowError as exc:
            raise EvaluationError(f"{e.func} overflowed at {arg}") from exc
    raise TypeError(f"not an expression node: {e!r}")


# -- differentiation ----------------------------------------------------------

def diff(e: Expr, var: str) -> Expr:
    """Symbolic partial derivative (unsimplified)."""
    if isinstance(e, Num):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Neg):
        return Neg(diff(e.arg, var))
    if isinstance(e, Add):
        return Add(diff(e.left, var), diff(e.right, var))
    if isinstance(e, Sub):
        return Sub(diff(e.left, var), diff(e.right, var))
    if isinstance(e, Mul):
        return Add(Mul(diff(e.left, var), e.right), Mul(e.left, diff(e.right, var)))
    if isinstance(e, Div):
        u, v = e.left, e.right
        return Div(Sub(Mul(diff(u, var), v), Mul(u, diff(v, var))), Pow(v, 2))
    if isinstance(e, Pow):
        if e.exp == 0:
            return ZERO
        return Mul(Mul(Num(e.exp), Pow(e.base, e.exp - 1)), diff(e.base, var))
    if isinstance(e, Call):
        du = diff(e.arg, var)
        if e.func == "exp":
            outer: Expr = Call("exp", e.arg)
        elif e.func == "sin":
            outer = Call("cos", e.arg)
        else:
            outer = Neg(Call("sin", e.arg))
        return Mul(outer, du)
    raise TypeError(f"not an expression node: {e!r}")


def derivative(e: Expr, var: str = "z") -> Expr:
    return simplify(diff(e, var))


def _is(e: Expr, v: complex) -> bool:
    return isinstance(e, Num) and e.value == v


def simplify(e: Expr) -> Expr:
    """Constant folding plus the 0/1 identities.  Never changes the value."""
    if isinstance(e, (Num, Var)):
        return e
    if isinstance(e, Neg):
        a = simplify(e.arg)
        if isinstance(a, Num):
            return Num(-a.value)
        if isinstance(a, Neg):
            return a.arg
        return Neg(a)
    if isinstance(e, Call):
        a = simplify(e.arg)
        if isinstance(a, Num) and a.value == 0:
            return ONE if e.func in ("exp", "cos") else ZERO
        return Call(e.func, a)
    if isinstance(e, Pow):
        b = simplify(e.base)
        if e.exp == 0:
            return ONE
        if e.exp == 1:
            return b
        if isinstance(b, Num) and e.exp > 0:
            return Num(b.value ** e.exp)
        if isinstance(b, Pow) and (b.exp > 0) == (e.exp > 0):
            return Pow(b.base, b.exp * e.exp)
        return Pow(b, e.exp)
    l, r = simplify(e.left), simplify(e.right)
    if isinstance(e, Add):
        if _is(l, 0):
            return r
        if _is(r, 0):
            return l
        if isinstance(l, Num) and isinstance(r, Num):
            return Num(l.value + r.value)
        return Add(l, r)
    if isinstance(e, Sub):
        if _is(r, 0):
            return l
        if _is(l, 0):
            return simplify(Neg(r))
        if isinstance(l, Num) and isinstance(r, Num):
            return Num(l.value - r.value)
        return Sub(l, r)
    if isinstance(e, Mul):
        if _is(l, 0) or _is(r, 0):
            return ZERO
        if _is(l, 1):
            return r
        if _is(r, 1):
            return l
        if _is(l, -1):
            return simplify(Neg(r))
        if _is(r, -1):
            return simplify(Neg(l))
        if isinstance(l, Num) and isinstance(r, Num):
            return Num(l.value * r.value)
        if isinstance(r, Num):
            # constants to the left keep printed forms canonical
            return Mul(r, l)
        return Mul(l, r)
    if isinstance(e, Div):
        if _is(r, 1):
            return l
        if _is(l, 0) and not _is(r, 0):
            return ZERO
        if isinstance(l, Num) and isinstance(r, Num) and r.value != 0:
            return Num(l.value / r.value)
        return Div(l, r)
    raise TypeError(f"not an expression node: {e!r}")


# -- printing -----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2}
_OPS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _real(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("cannot print a non-finite literal")
    return repr(float(x))


def _num(v: complex) -> tuple[str, int]:
    """Text of a literal and its binding level (3 = atom, 1 = sum)."""
    if v.imag == 0:
        s = _real(v.real)
        return s, (3 if v.real >= 0 and not s.startswith("-") else 2)
    if v.real == 0:
        if v.imag == 1:
            return "i", 3
        return f"{_real(v.imag)}*i", 2
    return f"{_real(v.real)}+{_real(v.imag)}*i", 1


def _prec(e: Expr) -> int:
    if isinstance(e, Num):
        return _num(e.value)[1]
    if isinstance(e, (Var, Call)):
        return 3
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 2.5
    return _PREC[type(e)]


def _wrap(e: Expr, min_prec: float) -> str:
    s = to_string(e)
    return f"({s})" if _prec(e) < min_prec else s


def to_string(e: Expr) -> str:
    """Render in the parser's grammar; ``parse(to_string(e))`` rebuilds ``e``
    for every tree the parser itself can produce."""
    if isinstance(e, Num):
        return _num(e.value)[0]
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({to_string(e.arg)})"
    if isinstance(e, Neg):
        # unary minus applies to an atom
        inner = e.arg
        if isinstance(inner, (Var, Call, Neg)) or (isinstance(inner, Num) and _prec(inner) == 3):
            return "-" + to_string(inner)
        return f"-({to_string(inner)})"
    if isinstance(e, Pow):
        b = e.base
        if isinstance(b, (Var, Call, Neg)) or (isinstance(b, Num) and _prec(b) == 3):
            base = to_string(b)
        else:
            base = f"({to_string(b)})"
        return f"{base}^{e.exp}"
    p = _PREC[type(e)]
    return f"{_wrap(e.left, p)}{_OPS[type(e)]}{_wrap(e.right, p + 0.5)}"
