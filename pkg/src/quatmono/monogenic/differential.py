"""Gateaux and Hausdorff differentiability of component maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra import E1, E2, E3, E4, ONE, ZERO, Quat, mul, norm
from ..errors import NotHMonogenic, RankDeficientFrame
from ..exact import ExactComplex
from ..frame import Frame
from .maps import LEFT, RIGHT, ComponentMap, GMap, _side_args

UNIT_DIRECTIONS = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
DEFAULT_H_TOL = 1e-9


def _side(side: str) -> str:
    _side_args(side)
    return side


# -- Gateaux ------------------------------------------------------------------

def _expect(m, side: str) -> GMap:
    if not isinstance(m, GMap) or m.side != side:
        raise TypeError(f"expected a {side} G-map, got {type(m).__name__}")
    return m


def right_value(m: GMap, p) -> Quat:
    return _expect(m, RIGHT).value(p)


def left_value(m: GMap, p) -> Quat:
    return _expect(m, LEFT).value(p)


def right_gateaux(m: GMap, p) -> Quat:
    return _expect(m, RIGHT).gateaux(p)


def left_gateaux(m: GMap, p) -> Quat:
    return _expect(m, LEFT).gateaux(p)


DEFAULT_EPS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


def gateaux_limit_residual(m: GMap, p, h, eps_list=DEFAULT_EPS, side: str | None = None,
                           exact: bool = False) -> list[float]:
    """Distance of the difference quotient from the claimed limit, per epsilon.

    Right side: ||(Phi(zeta + eps h) - Phi(zeta))/eps - h Phi'(zeta)||;
    left side multiplies Phi'(zeta) h.  With ``exact=True`` all arithmetic is
    rational (the map must be built from rational expressions) and
    ``eps`` values are read as decimal fractions.
    """
    side = _side(side or m.side)
    fr = m.frame
    if exact:
        p = tuple(Fraction(c) for c in p)
        h = tuple(Fraction(c) for c in h)
        hq = _dzeta_exact(fr, h)
        deriv = m.gateaux_exact(p)
        phi0 = m.value_exact(p)
    else:
        hq = fr.dzeta(h)
        deriv = m.gateaux(p)
        phi0 = m.value(p)
    target = mul(hq, deriv) if side == RIGHT else mul(deriv, hq)
    out = []
    for eps in eps_list:
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        if exact:
            e = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
            pe = tuple(a + e * b for a, b in zip(p, h))
            quot = (m.value_exact(pe) - phi0).scale(ExactComplex(1 / e))
        else:
            pe = tuple(a + eps * b for a, b in zip(p, h))
            quot = (m.value(pe) - phi0) / eps
        out.append(norm(quot - target))
    return out


def _dzeta_exact(fr: Frame, d) -> Quat:
    a1, a2, b1, b2 = (ExactComplex.coerce(c) for c in (fr.a1, fr.a2, fr.b1, fr.b2))
    dx, dy, dz = (ExactComplex.coerce(c) for c in d)
    return Quat(dx + dy * a1 + dz * b1, dx + dy * a2 + dz * b2, ExactComplex(0), ExactComplex(0))


# -- Cauchy-Riemann analogues -------------------------------------------------

def cr_residual(cm: ComponentMap, p, side: str = RIGHT) -> tuple[Quat, Quat]:
    """Right: (Phi_y - i2 Phi_x, Phi_z - i3 Phi_x); left multiplies on the other side."""
    side = _side(side)
    fr = cm.frame
    px, py, pz = cm.partials(p)
    if side == RIGHT:
        return py - mul(fr.i2, px), pz - mul(fr.i3, px)
    return py - mul(px, fr.i2), pz - mul(px, fr.i3)


def _scale(px, py, pz) -> float:
    return 1.0 + max(norm(px), norm(py), norm(pz))


def cr_residual_norm(cm: ComponentMap, p, side: str = RIGHT) -> float:
    """max ||CR residual|| / (1 + max ||partial||)."""
    r1, r2 = cr_residual(cm, p, side)
    return max(norm(r1), norm(r2)) / _scale(*cm.partials(p))


def one_sided_h_residual(cm: ComponentMap, p, side: str = RIGHT) -> float:
    """How far dPhi is from dzeta * dPhi/dx (right) or dPhi/dx * dzeta (left).

    Checked on the three unit increments; normalised like
    :func:`cr_residual_norm`.
    """
    side = _side(side)
    fr = cm.frame
    parts = cm.partials(p)
    px = parts[0]
    worst = 0.0
    for d, pd in zip(UNIT_DIRECTIONS, parts):
        dz = fr.dzeta(d)
        pred = mul(dz, px) if side == RIGHT else mul(px, dz)
        worst = max(worst, norm(pd - pred))
    return worst / _scale(*parts)


# -- Hausdorff ----------------------------------------------------------------

@dataclass(frozen=True)
class HTestResult:
    ok: bool
    coefficients: tuple[tuple[complex, complex], ...]
    residual: float


def _span_matrix(fr: Frame) -> np.ndarray:
    M = fr.gradient_rows().T
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise RankDeficientFrame("(1, a1, b1) and (1, a2, b2) are complex-collinear")
    return M


def h_monogenic_test(cm: ComponentMap, p, tol: float = DEFAULT_H_TOL) -> HTestResult:
    """Is each component gradient a combination lambda*(1,a1,b1) + mu*(1,a2,b2)?

    Equivalently dU_k = lambda_k dxi1 + mu_k dxi2.  The residual reported is
    max_k ||M s_k - grad U_k|| / (1 + ||grad U_k||) over least-squares s_k.
    """
    M = _span_matrix(cm.frame)
    px, py, pz = cm.partials(p)
    G = np.array([px.to_array(), py.to_array(), pz.to_array()])  # rows x,y,z; cols k
    sol, *_ = np.linalg.lstsq(M, G, rcond=None)
    res = M @ sol - G
    rel = np.linalg.norm(res, axis=0) / (1.0 + np.linalg.norm(G, axis=0))
    worst = float(rel.max())
    coeffs = tuple((complex(sol[0, k]), complex(sol[1, k])) for k in range(4))
    return HTestResult(worst <= tol, coeffs, worst)


@dataclass(frozen=True)
class HausdorffDecomposition:
    """dPhi = sum_s A_s dzeta B_s at ``point``."""

    pairs: tuple[tuple[Quat, Quat], ...]
    point: tuple

    def differential(self, dz: Quat) -> Quat:
        acc = ZERO
        for a, b in self.pairs:
            acc = acc + mul(mul(a, dz), b)
        return acc

    def derivative(self) -> Quat:
        """Hausdorff derivative sum_s A_s B_s."""
        acc = ZERO
        for a, b in self.pairs:
            acc = acc + mul(a, b)
        return acc

    def directional(self, frame: Frame) -> tuple[Quat, Quat, Quat]:
        return tuple(self.differential(frame.dzeta(d)) for d in UNIT_DIRECTIONS)

    def reconstruction_error(self, cm: ComponentMap) -> float:
        got = self.directional(cm.frame)
        want = cm.partials(self.point)
        return max(norm(g - w) for g, w in zip(got, want))


def hausdorff_decomposition(cm: ComponentMap, p, tol: float = DEFAULT_H_TOL) -> HausdorffDecomposition:
    """Explicit pairs (A_s, B_s) built from dU_k = lambda_k dxi1 + mu_k dxi2.

    Uses e1 dz e1 = dxi1 e1, e3 dz e4 = dxi2 e1, e2 dz e2 = dxi2 e2,
    e4 dz e3 = dxi1 e2, e1 dz e3 = dxi1 e3, e3 dz e2 = dxi2 e3,
    e4 dz e1 = dxi1 e4, e2 dz e4 = dxi2 e4.
    """
    t = h_monogenic_test(cm, p, tol)
    if not t.ok:
        raise NotHMonogenic(f"differential is not a polynomial in dzeta (residual {t.residual:.3g})")
    (l1, m1), (l2, m2), (l3, m3), (l4, m4) = t.coefficients
    candidates = (
        (l1, E1, E1, "A"), (m1, E3, E4, "B"),
        (m2, E2, E2, "A"), (l2, E4, E3, "B"),
        (l3, E1, E3, "B"), (m3, E3, E2, "A"),
        (l4, E4, E1, "A"), (m4, E2, E4, "B"),
    )
    # least squares leaves rounding-level values where a coefficient is zero
    cutoff = 1e-13 * (1 + max(abs(c) for c, *_ in candidates))
    pairs = []
    for c, a, b, where in candidates:
        if abs(c) <= cutoff:
            continue
        pairs.append((a * c, b) if where == "A" else (a, b * c))
    return HausdorffDecomposition(tuple(pairs), tuple(p))


def gateaux_decomposition(m: GMap, p) -> HausdorffDecomposition:
    """Single pair (1, Phi') for right maps, (Phi', 1) for left maps."""
    d = m.gateaux(p)
    pair = (ONE, d) if m.side == RIGHT else (d, ONE)
    return HausdorffDecomposition((pair,), tuple(p))


def hausdorff_derivative(cm: ComponentMap, p, tol: float = DEFAULT_H_TOL) -> Quat:
    """dPhi/dx, after confirming the map is H-monogenic at ``p``."""
    t = h_monogenic_test(cm, p, tol)
    if not t.ok:
        raise NotHMonogenic(f"map is not H-monogenic at {tuple(p)} (residual {t.residual:.3g})")
    return cm.partials(p)[0]
