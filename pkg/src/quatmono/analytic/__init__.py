"""Analytic functions of one complex variable: the building blocks F_k.

An *analytic function* here is either an expression tree (:class:`Expr`,
usually in the variable ``z``) or a :class:`PowerSeries`.  The builtins
``exp``, ``sin``, ``cos``, ``identity``, ``const`` and ``monomial`` are
expression-tree factories.
"""

from __future__ import annotations

from typing import Union

from .compile import lambdify
from .expr import (FUNCTIONS, Add, Call, Div, Expr, Mul, Neg, Num, Pow, Sub, Var, diff,
                   evaluate, simplify, substitute, to_string, variables)
from .parser import parse
from .series import (MAX_ORDER, PowerSeries, eval_poly, jet, taylor_coeffs,
                     taylor_coeffs_symbolic)

AnalyticFn = Union[Expr, PowerSeries]


def derivative(f: AnalyticFn, var: str = "z") -> AnalyticFn:
    if isinstance(f, PowerSeries):
        return f.derivative()
    return simplify(diff(f, var))


def as_expr(f: AnalyticFn, var: str = "z") -> Expr:
    """Expression tree in ``var`` for ``f`` (series become polynomials)."""
    if isinstance(f, PowerSeries):
        return f.to_expr(var)
    names = variables(f)
    if not names:
        return f
    if len(names) > 1:
        raise ValueError(f"expected a one-variable function, got {sorted(names)}")
    return substitute(f, {next(iter(names)): Var(var)})


def exp() -> Expr:
    return Call("exp", Var("z"))


def sin() -> Expr:
    return Call("sin", Var("z"))


def cos() -> Expr:
    return Call("cos", Var("z"))


def identity() -> Expr:
    return Var("z")


def const(c) -> Expr:
    return Num(c)


def monomial(n: int) -> Expr:
    return Pow(Var("z"), n)


BUILTINS = {"exp": exp, "sin": sin, "cos": cos, "identity": identity}

__all__ = [
    "AnalyticFn", "Expr", "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "FUNCTIONS", "MAX_ORDER", "PowerSeries", "parse", "evaluate", "diff", "derivative",
    "simplify", "substitute", "to_string", "variables", "taylor_coeffs",
    "taylor_coeffs_symbolic", "jet", "eval_poly", "lambdify", "as_expr",
    "exp", "sin", "cos", "identity", "const", "monomial", "BUILTINS",
]
