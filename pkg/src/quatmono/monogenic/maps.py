"""Maps from Omega_zeta into H(C).

Two families live here.  :class:`RightGMap` and :class:`LeftGMap` are
built from four analytic functions of one complex variable, which makes
them G-monogenic by construction.  :class:`ComponentMap` subclasses give
the four components U_k(x, y, z) directly together with their partial
derivatives; every test for monogenicity works on this form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .. import analytic as an
from ..algebra import Quat, mul
from ..errors import FrameMismatch, NotAnalyticMap
from ..exact import ExactComplex
from ..frame import Frame, as_point, xi

RIGHT = "right"
LEFT = "left"
XI_NAMES = ("xi1", "xi2")

# which of (xi1, xi2) feeds F_k, k = 1..4
RIGHT_ARGS = (0, 1, 0, 1)
LEFT_ARGS = (0, 1, 1, 0)


def _side_args(side: str) -> tuple[int, ...]:
    if side == RIGHT:
        return RIGHT_ARGS
    if side == LEFT:
        return LEFT_ARGS
    raise ValueError(f"side must be 'right' or 'left', not {side!r}")


def _compile1(f) -> Callable[[complex], complex]:
    if isinstance(f, an.PowerSeries):
        return f
    return an.lambdify(an.as_expr(f, "z"), ("z",))


class GMap:
    """Shared machinery of :class:`RightGMap` and :class:`LeftGMap`."""

    side: str = RIGHT

    def __init__(self, frame: Frame, F1, F2, F3, F4):
        self.frame = frame
        self.F = tuple(an.parse(f) if isinstance(f, str) else f for f in (F1, F2, F3, F4))
        self.dF = tuple(an.derivative(an.as_expr(f) if not isinstance(f, an.PowerSeries) else f)
                        for f in self.F)
        self._f = tuple(_compile1(f) for f in self.F)
        self._df = tuple(_compile1(f) for f in self.dF)
        self._args = _side_args(self.side)

    def __repr__(self):
        fs = ", ".join(str(f) if isinstance(f, an.Expr) else repr(f) for f in self.F)
        return f"{type(self).__name__}({self.frame!r}, {fs})"

    def value(self, p) -> Quat:
        x = xi(self.frame, p)
        return Quat(*(f(x[k]) for f, k in zip(self._f, self._args)))

    __call__ = value

    def gateaux(self, p) -> Quat:
        """Gateaux derivative: each F_k replaced by F_k'."""
        x = xi(self.frame, p)
        return Quat(*(f(x[k]) for f, k in zip(self._df, self._args)))

    def value_exact(self, p) -> Quat:
        """Value with rational arithmetic; every F_k must be a rational expression."""
        return self._exact(self.F, p)

    def gateaux_exact(self, p) -> Quat:
        return self._exact(self.dF, p)

    def _exact(self, fns, p) -> Quat:
        fr = self.frame
        x, y, z = (ExactComplex.coerce(Fraction(c) if not isinstance(c, Fraction) else c)
                   for c in p)
        a1, a2, b1, b2 = (ExactComplex.coerce(c) for c in (fr.a1, fr.a2, fr.b1, fr.b2))
        xs = (x + y * a1 + z * b1, x + y * a2 + z * b2)
        out = []
        for f, k in zip(fns, self._args):
            if isinstance(f, an.PowerSeries):
                f = f.to_expr("z")
            e = an.as_expr(f, "z")
            if {c.func for c in _calls(e)}:
                raise TypeError("exact evaluation needs rational expressions (no exp/sin/cos)")
            out.append(an.evaluate(e, {"z": xs[k]}, const=ExactComplex.coerce))
        return Quat(*out)

    def components(self) -> "ExprComponentMap":
        """The same map written as U_k(xi1, xi2) expressions."""
        us = [an.as_expr(f, XI_NAMES[k]) for f, k in zip(self.F, self._args)]
        return ExprComponentMap(self.frame, us)

    def coefficient_fns(self):
        """(function, argument index) pairs, in component order."""
        return tuple(zip(self.F, self._args))


def _calls(e):
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, an.Call):
            yield n
            stack.append(n.arg)
        elif isinstance(n, an.Neg):
            stack.append(n.arg)
        elif isinstance(n, an.Pow):
            stack.append(n.base)
        elif isinstance(n, (an.Add, an.Sub, an.Mul, an.Div)):
            stack.extend((n.left, n.right))


class RightGMap(GMap):
    """F1(xi1) e1 + F2(xi2) e2 + F3(xi1) e3 + F4(xi2) e4."""

    side = RIGHT


class LeftGMap(GMap):
    """F1(xi1) e1 + F2(xi2) e2 + F3(xi2) e3 + F4(xi1) e4 (hatted functions)."""

    side = LEFT


class ComponentMap:
    """Phi = sum U_k(x, y, z) e_k with first partials available everywhere."""

    frame: Frame
    is_analytic = False

    def value(self, p) -> Quat:
        raise NotImplementedError

    def partials(self, p) -> tuple[Quat, Quat, Quat]:
        """(dPhi/dx, dPhi/dy, dPhi/dz) at ``p``."""
        raise NotImplementedError

    def __call__(self, p) -> Quat:
        return self.value(p)

    def directional(self, p, d) -> Quat:
        px, py, pz = self.partials(p)
        return px * d[0] + py * d[1] + pz * d[2]


class ExprComponentMap(ComponentMap):
    """Components given as expressions in xi1 and xi2.

    Partials are exact: dU/dx = U_1 + U_2, dU/dy = a1 U_1 + a2 U_2 and
    dU/dz = b1 U_1 + b2 U_2, where U_j is the symbolic xi_j-derivative.
    """

    is_analytic = True

    def __init__(self, frame: Frame, components: Sequence):
        if len(components) != 4:
            raise ValueError("need exactly four components")
        self.frame = frame
        self.U = tuple(an.parse(u, XI_NAMES) if isinstance(u, str) else u for u in components)
        for u in self.U:
            extra = an.variables(u) - set(XI_NAMES)
            if extra:
                raise ValueError(f"component uses unknown variables {sorted(extra)}")
        self.dU = tuple((an.derivative(u, "xi1"), an.derivative(u, "xi2")) for u in self.U)
        self._u = tuple(an.lambdify(u, XI_NAMES) for u in self.U)
        self._du = tuple((an.lambdify(d1, XI_NAMES), an.lambdify(d2, XI_NAMES))
                         for d1, d2 in self.dU)

    def __repr__(self):
        return f"ExprComponentMap({self.frame!r}, {[str(u) for u in self.U]!r})"

    def value(self, p) -> Quat:
        x1, x2 = xi(self.frame, p)
        return Quat(*(f(x1, x2) for f in self._u))

    def xi_partials(self, p) -> tuple[Quat, Quat]:
        """(dPhi/dxi1, dPhi/dxi2) componentwise."""
        x1, x2 = xi(self.frame, p)
        d = [(g1(x1, x2), g2(x1, x2)) for g1, g2 in self._du]
        return Quat(*(a for a, _ in d)), Quat(*(b for _, b in d))

    def partials(self, p):
        fr = self.frame
        d1, d2 = self.xi_partials(p)
        return (d1 + d2,
                d1 * fr.a1 + d2 * fr.a2,
                d1 * fr.b1 + d2 * fr.b2)


class RawComponentMap(ComponentMap):
    """Components given as Python callables of (x, y, z).

    ``grads``, if given, holds four callables returning (dU/dx, dU/dy, dU/dz).
    Otherwise partials come from central differences with step
    ``step * (1 + |coordinate|)``.
    """

    def __init__(self, frame: Frame, funcs: Sequence[Callable], grads: Sequence[Callable] | None = None,
                 step: float = 1e-6, name: str | None = None):
        if len(funcs) != 4 or (grads is not None and len(grads) != 4):
            raise ValueError("need exactly four components")
        self.frame = frame
        self.funcs = tuple(funcs)
        self.grads = tuple(grads) if grads is not None else None
        self.step = step
        self.name = name or "raw"

    def __repr__(self):
        return f"RawComponentMap({self.name!r})"

    def value(self, p) -> Quat:
        x, y, z = p
        return Quat(*(complex(f(x, y, z)) for f in self.funcs))

    def partials(self, p):
        x, y, z = as_point(p)
        if self.grads is not None:
            g = [tuple(complex(c) for c in gr(x, y, z)) for gr in self.grads]
            return tuple(Quat(*(g[k][j] for k in range(4))) for j in range(3))
        out = []
        base = [x, y, z]
        for j in range(3):
            h = self.step * (1 + abs(base[j]))
            up, dn = list(base), list(base)
            up[j] += h
            dn[j] -= h
            out.append((self.value(up) - self.value(dn)) / (up[j] - dn[j]))
        return tuple(out)


def product(f: ComponentMap, g: ComponentMap) -> ComponentMap:
    """Pointwise algebra product f*g.

    W1 = U1 V1 + U3 V4, W2 = U2 V2 + U4 V3, W3 = U1 V3 + U3 V2, W4 = U2 V4 + U4 V1.
    Expression maps give an expression map; anything else gives a raw map
    whose partials follow the product rule.
    """
    if f.frame != g.frame:
        raise FrameMismatch("factors are defined over different frames")
    if isinstance(f, ExprComponentMap) and isinstance(g, ExprComponentMap):
        U, V = f.U, g.U
        M = an.Mul
        W = [
            an.Add(M(U[0], V[0]), M(U[2], V[3])),
            an.Add(M(U[1], V[1]), M(U[3], V[2])),
            an.Add(M(U[0], V[2]), M(U[2], V[1])),
            an.Add(M(U[1], V[3]), M(U[3], V[0])),
        ]
        return ExprComponentMap(f.frame, [an.simplify(w) for w in W])

    def comp(k):
        return lambda x, y, z: mul(f.value((x, y, z)), g.value((x, y, z))).components()[k]

    def grad(k):
        def gk(x, y, z):
            p = (x, y, z)
            fv, gv = f.value(p), g.value(p)
            fp, gp = f.partials(p), g.partials(p)
            return tuple((mul(fp[j], gv) + mul(fv, gp[j])).components()[k] for j in range(3))
        return gk

    return RawComponentMap(f.frame, [comp(k) for k in range(4)], [grad(k) for k in range(4)],
                           name=f"({f!r})*({g!r})")


def require_gmap(m) -> GMap:
    if not isinstance(m, GMap):
        raise NotAnalyticMap("operation needs a map given by analytic functions F_k")
    return m
