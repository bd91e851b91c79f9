"""Power-series expansion of G-monogenic maps.

With Delta_j = xi_j(p) - xi_j(p0) the increment is zeta - zeta0 =
Delta_1 e1 + Delta_2 e2, so (zeta - zeta0)^n = Delta_1^n e1 + Delta_2^n e2.
Right multiplication sends the e1 part to {e1, e3} and the e2 part to
{e2, e4}; left multiplication sends e1 to {e1, e4} and e2 to {e2, e3}.
Either way the n-th coefficient is assembled from the scalar Taylor
coefficients of the F_k at the matching xi_j(p0).
"""

from __future__ import annotations

from .. import analytic as an
from ..algebra import ZERO, Quat, mul, norm
from ..frame import Frame, xi
from .maps import RIGHT, ExprComponentMap, GMap, XI_NAMES, _side_args


def taylor_expand(m: GMap, p0, N: int) -> list[Quat]:
    """Coefficients p_0..p_N (right maps) or hat p_0..hat p_N (left maps)."""
    centers = xi(m.frame, p0)
    cols = [an.taylor_coeffs(f, centers[k], N) for f, k in m.coefficient_fns()]
    return [Quat(*(c[n] for c in cols)) for n in range(N + 1)]


def zeta_power(frame: Frame, p0, p, n: int) -> Quat:
    """(zeta - zeta0)^n in closed form."""
    x0, y0 = xi(frame, p0)
    x1, y1 = xi(frame, p)
    return Quat((x1 - x0) ** n, (y1 - y0) ** n, 0j, 0j)


def partial_sums(coeffs, frame: Frame, p0, p, side: str = RIGHT) -> list[Quat]:
    """S_0, S_1, ..., S_N of the series at ``p``."""
    _side_args(side)
    out = []
    acc = ZERO
    for n, c in enumerate(coeffs):
        zp = zeta_power(frame, p0, p, n)
        acc = acc + (mul(zp, c) if side == RIGHT else mul(c, zp))
        out.append(acc)
    return out


def eval_taylor(coeffs, frame: Frame, p0, p, side: str = RIGHT) -> Quat:
    """sum (zeta - zeta0)^n p_n (right) or sum p_n (zeta - zeta0)^n (left)."""
    sums = partial_sums(coeffs, frame, p0, p, side)
    return sums[-1] if sums else ZERO


def truncation_errors(m: GMap, p0, p, N: int) -> list[float]:
    """||Phi(p) - S_n(p)|| for n = 0..N."""
    coeffs = taylor_expand(m, p0, N)
    target = m.value(p)
    return [norm(target - s) for s in partial_sums(coeffs, m.frame, p0, p, m.side)]


def fiber_taylor_coeffs(cm: ExprComponentMap, p0, N: int, side: str = RIGHT) -> list[Quat]:
    """Candidate series coefficients of a component map for ``side``.

    Component k is expanded in the single variable that the one-sided
    representation assigns to it, with the other variable frozen at its
    value at ``p0``.  For a G-monogenic map on that side these are the true
    coefficients; otherwise the series does not reproduce the map.
    """
    args = _side_args(side)
    point = dict(zip(XI_NAMES, xi(cm.frame, p0)))
    if N > an.MAX_ORDER:
        raise ValueError(f"Taylor order {N} exceeds the supported maximum {an.MAX_ORDER}")
    cols = [an.jet(u, XI_NAMES[k], point, N) for u, k in zip(cm.U, args)]
    return [Quat(*(c[n] for c in cols)) for n in range(N + 1)]
