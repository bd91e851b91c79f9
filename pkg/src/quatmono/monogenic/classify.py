"""Classification of component maps and the equivalent monogenicity criteria.

:func:`classify` decides right/left G-monogenicity, H-monogenicity and
right/left H-monogenicity from pointwise residuals on quasi-random samples.
:func:`criteria_verdicts` evaluates five independent characterisations of
one-sided G-monogenicity, which must agree on every map:

I    Cauchy-Riemann analogue
II   one-sided H-monogenicity (dPhi = dzeta Phi_x or Phi_x dzeta)
III  local power series reproduces the map
IV   vanishing integrals over triangle boundaries
V    representation by analytic functions of xi1 / xi2 alone
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from ..algebra import norm
from ..errors import EmptySampleSet
from ..frame import DEGENERACY_TUBE, DomainBox, Frame, Point3, is_degenerate
from ..integration import DEFAULT_NODES, MORERA_RTOL, morera_residual, morera_scale, random_triangle
from .differential import cr_residual_norm, h_monogenic_test, one_sided_h_residual
from .maps import LEFT, RIGHT, ComponentMap, ExprComponentMap, _side_args
from .taylor import fiber_taylor_coeffs, partial_sums

DEFAULT_TOL = 1e-8


def sample_points(frame: Frame, box: DomainBox, n: int, seed: int = 0,
                  margin: float = 0.0) -> list[Point3]:
    """``n`` scrambled-Sobol points in the box, outside the degeneracy tube.

    ``margin`` shrinks the box by that fraction of each width on every side.
    """
    if n < 1:
        raise EmptySampleSet("need at least one sample point")
    lo = np.array(box.min) + margin * box.widths
    hi = np.array(box.max) - margin * box.widths
    m0 = max(1, math.ceil(math.log2(2 * n)))
    out: list[Point3] = []
    for m in range(m0, m0 + 6):
        out = []
        for u in qmc.Sobol(d=3, scramble=True, seed=seed).random_base2(m):
            p = Point3(*(float(v) for v in lo + u * (hi - lo)))
            if not is_degenerate(frame, p, DEGENERACY_TUBE):
                out.append(p)
                if len(out) == n:
                    return out
    if not out:
        raise EmptySampleSet("every sample fell inside the degeneracy tube")
    return out


@dataclass
class ClassificationReport:
    right_G: bool
    left_G: bool
    H: bool
    right_H: bool
    left_H: bool
    residuals: dict[str, float] = field(default_factory=dict)
    points_tested: int = 0
    adjusted: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "right_G": self.right_G, "left_G": self.left_G, "H": self.H,
            "right_H": self.right_H, "left_H": self.left_H,
            "residuals": dict(self.residuals), "points_tested": self.points_tested,
            "adjusted": list(self.adjusted),
        }


def classify(cm: ComponentMap, box: DomainBox, n_samples: int = 64, tol: float = DEFAULT_TOL,
             seed: int = 0, h_tol: float | None = None) -> ClassificationReport:
    """Residual-based verdicts; a verdict holds if its residual is <= tol everywhere.

    Residuals are scale-free (see :func:`cr_residual_norm`).  Verdicts are
    then closed under right_G => right_H => H and left_G => left_H => H;
    any verdict changed by that closure is listed in ``adjusted``.
    """
    pts = sample_points(cm.frame, box, n_samples, seed)
    h_tol = tol if h_tol is None else h_tol
    r = {"cr_right": 0.0, "cr_left": 0.0, "h_span": 0.0, "right_H": 0.0, "left_H": 0.0}
    for p in pts:
        r["cr_right"] = max(r["cr_right"], cr_residual_norm(cm, p, RIGHT))
        r["cr_left"] = max(r["cr_left"], cr_residual_norm(cm, p, LEFT))
        r["h_span"] = max(r["h_span"], h_monogenic_test(cm, p, h_tol).residual)
        r["right_H"] = max(r["right_H"], one_sided_h_residual(cm, p, RIGHT))
        r["left_H"] = max(r["left_H"], one_sided_h_residual(cm, p, LEFT))
    r = {k: float(v) for k, v in r.items()}
    right_G = r["cr_right"] <= tol
    left_G = r["cr_left"] <= tol
    H = r["h_span"] <= h_tol
    right_H = r["right_H"] <= tol
    left_H = r["left_H"] <= tol
    adjusted = []
    if right_G and not right_H:
        right_H = True
        adjusted.append("right_H")
    if left_G and not left_H:
        left_H = True
        adjusted.append("left_H")
    if (right_H or left_H) and not H:
        H = True
        adjusted.append("H")
    return ClassificationReport(right_G, left_G, H, right_H, left_H, r, len(pts), tuple(adjusted))


# -- the five criteria --------------------------------------------------------

def criterion_cr(cm, points, side, tol=DEFAULT_TOL) -> tuple[bool, float]:
    worst = max(cr_residual_norm(cm, p, side) for p in points)
    return bool(worst <= tol), float(worst)


def criterion_one_sided_h(cm, points, side, tol=DEFAULT_TOL) -> tuple[bool, float]:
    worst_h = max(h_monogenic_test(cm, p, tol).residual for p in points)
    worst_1 = max(one_sided_h_residual(cm, p, side) for p in points)
    return bool(worst_h <= tol and worst_1 <= tol), float(max(worst_h, worst_1))


def criterion_taylor(cm, box: DomainBox, centers, side, order: int = 24,
                     tol: float = 1e-7, rng=None) -> tuple[bool | None, float]:
    """Series about each centre must reproduce the map at nearby probes.

    Probes lie within 0.25 * (distance from the centre to the box boundary).
    Only expression maps carry the analytic data; raw maps return None.
    """
    if not isinstance(cm, ExprComponentMap):
        return None, math.nan
    rng = rng or np.random.default_rng(0)
    worst = 0.0
    for p0 in centers:
        r = 0.25 * box.distance_to_boundary(p0)
        if r <= 0:
            continue
        coeffs = fiber_taylor_coeffs(cm, p0, order, side)
        for _ in range(4):
            d = rng.normal(size=3)
            d *= r * rng.random() / np.linalg.norm(d)
            p = Point3(*(np.asarray(p0) + d))
            s = partial_sums(coeffs, cm.frame, p0, p, side)[-1]
            v = cm.value(p)
            worst = max(worst, norm(v - s) / (1 + norm(v)))
    return bool(worst <= tol), float(worst)


def criterion_morera(cm, box: DomainBox, side, n_triangles: int = 20, seed: int = 0,
                     nodes: int = DEFAULT_NODES, rtol: float = MORERA_RTOL) -> tuple[bool, float]:
    """All triangle residuals <= rtol * scale; returns the worst residual/scale."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_triangles):
        t = random_triangle(rng, box)
        worst = max(worst, morera_residual(cm, t, side, nodes) / morera_scale(cm, t, nodes))
    return bool(worst <= rtol), float(worst)


def _lift(frame: Frame, k: int, p0, w: complex) -> Point3:
    """Least-norm displacement of ``p0`` that moves xi_k by ``w``."""
    a, b = (frame.a1, frame.b1) if k == 0 else (frame.a2, frame.b2)
    M = np.array([[1.0, a.real, b.real], [0.0, a.imag, b.imag]])
    d = np.linalg.pinv(M) @ np.array([w.real, w.imag])
    return Point3(*(np.asarray(p0) + d))


def _fiber_direction(frame: Frame, k: int) -> np.ndarray:
    a, b = (frame.a1, frame.b1) if k == 0 else (frame.a2, frame.b2)
    d = np.cross([1.0, a.real, b.real], [0.0, a.imag, b.imag])
    return d / np.linalg.norm(d)


def criterion_representable(cm, centers, side, radius: float = 0.1, degree: int = 8,
                            tol: float = 1e-7, fiber_tol: float = 1e-9) -> tuple[bool, float]:
    """Each U_k must be a function of its assigned xi_j alone, analytic in it.

    Two checks per component and centre.  Fiber constancy: U_k does not
    change along the line on which xi_j is constant.  Analyticity: a complex
    polynomial of ``degree`` in xi_j fitted on one circle of samples
    predicts the values on another circle.
    """
    args = _side_args(side)
    fr = cm.frame
    ang_fit = np.exp(2j * np.pi * (np.arange(24) + 0.25) / 24)
    ang_val = np.exp(2j * np.pi * (np.arange(16) + 0.6) / 16)
    worst_fiber = 0.0
    worst_fit = 0.0
    for p0 in centers:
        v0 = cm.value(p0).components()
        for k, j in enumerate(args):
            d = _fiber_direction(fr, j)
            for t in (-radius, radius):
                q = Point3(*(np.asarray(p0) + t * d))
                diff = abs(cm.value(q).components()[k] - v0[k])
                worst_fiber = max(worst_fiber, diff / (1 + abs(v0[k])))
            w_fit = radius * ang_fit
            w_val = 0.6 * radius * ang_val
            y_fit = np.array([cm.value(_lift(fr, j, p0, w)).components()[k] for w in w_fit])
            y_val = np.array([cm.value(_lift(fr, j, p0, w)).components()[k] for w in w_val])
            V = np.vander(w_fit / radius, degree + 1, increasing=True)
            c, *_ = np.linalg.lstsq(V, y_fit, rcond=None)
            pred = np.vander(w_val / radius, degree + 1, increasing=True) @ c
            scale = 1 + np.abs(y_fit).max()
            worst_fit = max(worst_fit, float(np.abs(pred - y_val).max() / scale))
    ok = bool(worst_fiber <= fiber_tol and worst_fit <= tol)
    return ok, float(max(worst_fiber, worst_fit))


@dataclass
class CriteriaReport:
    side: str
    verdicts: dict[str, bool | None]
    residuals: dict[str, float]

    @property
    def consistent(self) -> bool:
        vals = {v for v in self.verdicts.values() if v is not None}
        return len(vals) == 1

    @property
    def verdict(self) -> bool:
        if not self.consistent:
            raise ValueError(f"criteria disagree: {self.verdicts}")
        return next(v for v in self.verdicts.values() if v is not None)


def criteria_verdicts(cm: ComponentMap, box: DomainBox, side: str = RIGHT, n_points: int = 16,
                      n_triangles: int = 20, seed: int = 0, tol: float = DEFAULT_TOL,
                      nodes: int = DEFAULT_NODES) -> CriteriaReport:
    """Evaluate criteria I-V for one side; see the module docstring."""
    pts = sample_points(cm.frame, box, n_points, seed, margin=0.1)
    centers = pts[: min(4, len(pts))]
    verdicts: dict[str, bool | None] = {}
    res: dict[str, float] = {}
    verdicts["I"], res["I"] = criterion_cr(cm, pts, side, tol)
    verdicts["II"], res["II"] = criterion_one_sided_h(cm, pts, side, tol)
    verdicts["III"], res["III"] = criterion_taylor(cm, box, centers, side,
                                                   rng=np.random.default_rng(seed))
    verdicts["IV"], res["IV"] = criterion_morera(cm, box, side, n_triangles, seed, nodes)
    verdicts["V"], res["V"] = criterion_representable(cm, centers, side)
    return CriteriaReport(side, verdicts, res)
