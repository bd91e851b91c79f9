"""Recursive-descent parser for analytic expressions.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' integer)?
    atom   := number | 'i' | VAR | func '(' expr ')' | '(' expr ')' | '-' atom

Unary minus binds tighter than ``^``: ``-z^2`` is ``(-z)^2``.
"""

from __future__ import annotations

import re

from ..errors import ExprSyntaxError, NonIntegerExponent, UnknownFunction
from .expr import FUNCTIONS, Add, Call, Div, Expr, Mul, Neg, Num, Pow, Sub, Var

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(src)
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", src, _byte(src, pos))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


def _byte(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, src: str, variables):
        self.src = src
        self.vars = frozenset(variables)
        if "i" in self.vars or self.vars & set(FUNCTIONS):
            raise ValueError("'i' and function names cannot be used as variables")
        self.toks = _tokenize(src)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def _err(self, cls, msg, tok=None):
        tok = tok or self.tok
        return cls(msg, self.src, _byte(self.src, tok.pos))

    def _advance(self) -> _Tok:
        t = self.tok
        self.k += 1
        return t

    def _expect(self, text: str):
        if self.tok.text != text or self.tok.kind != "op":
            found = self.tok.text or "end of input"
            raise self._err(ExprSyntaxError, f"expected {text!r}, found {found!r}")
        self._advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self._err(ExprSyntaxError, f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            return Pow(base, self._integer())
        return base

    def _integer(self) -> int:
        start = self.tok
        sign = 1
        if start.kind == "op" and start.text == "-":
            self._advance()
            sign = -1
        t = self.tok
        if t.kind != "num":
            raise self._err(NonIntegerExponent, "exponent must be an integer literal", start)
        if not t.text.isdigit():
            raise self._err(NonIntegerExponent, f"exponent {t.text!r} is not an integer", start)
        self._advance()
        return sign * int(t.text)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self._advance()
            return Num(float(t.text))
        if t.kind == "op" and t.text == "-":
            self._advance()
            return Neg(self.atom())
        if t.kind == "op" and t.text == "(":
            self._advance()
            e = self.expr()
            self._expect(")")
            return e
        if t.kind == "name":
            self._advance()
            if t.text == "i":
                return Num(1j)
            if t.text in self.vars:
                return Var(t.text)
            if t.text in FUNCTIONS:
                if not (self.tok.kind == "op" and self.tok.text == "("):
                    raise self._err(ExprSyntaxError, f"function {t.text!r} needs an argument")
                self._advance()
                arg = self.expr()
                self._expect(")")
                return Call(t.text, arg)
            raise self._err(UnknownFunction, f"unknown name {t.text!r}", t)
        found = t.text or "end of input"
        raise self._err(ExprSyntaxError, f"unexpected {found!r}")


def parse(src: str, variables=("z",)) -> Expr:
    """Parse ``src`` into an expression tree over the given variable names."""
    return _Parser(src, variables).parse()
