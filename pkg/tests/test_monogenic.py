import cmath

import numpy as np
import pytest

from quatmono import DomainBox, EXAMPLE_FRAME, Frame, embed
from quatmono import analytic as an
from quatmono.algebra import E1, E2, E3, E4, ONE, ZERO, mul, norm
from quatmono.errors import FrameMismatch, NotAnalyticMap, NotHMonogenic, RankDeficientFrame
from quatmono.frame import xi
from quatmono.monogenic import (LEFT, RIGHT, ExprComponentMap, LeftGMap, RawComponentMap,
                                RightGMap, classify, cr_residual, cr_residual_norm,
                                eval_taylor, gateaux_decomposition, gateaux_limit_residual,
                                h_monogenic_test, hausdorff_decomposition, hausdorff_derivative,
                                left_gateaux, left_value, partial_sums,
                                product, right_gateaux, right_value, sample_points,
                                taylor_expand, zeta_power)
from quatmono.monogenic.classify import criterion_representable
from quatmono.monogenic.maps import require_gmap

from conftest import rand_poly

FR = Frame(1j, 2j, 1, -1)
BOX = DomainBox((-1, -1, -1), (1, 1, 1))


def _points(rng, n, frame=FR):
    return sample_points(frame, BOX, n, seed=int(rng.integers(1 << 30)))


# -- values and Gateaux derivatives ----------------------------------------

def test_identity_map_is_embedding(rng):
    m = RightGMap(FR, an.identity(), an.identity(), an.const(0), an.const(0))
    for p in _points(rng, 5):
        assert right_value(m, p) == embed(FR, p)


def test_square_map_matches_algebra_square(rng):
    m = RightGMap(FR, "z^2", "z^2", "0", "0")
    for p in _points(rng, 5):
        z = embed(FR, p)
        assert right_value(m, p).isclose(mul(z, z), 1e-12)
        assert right_gateaux(m, p).isclose(2 * z, 1e-12)


def test_left_pattern_swaps_e3_e4_arguments():
    p = (0.3, -0.2, 0.5)
    x1, x2 = xi(FR, p)
    m = LeftGMap(FR, "z", "2*z", "3*z", "4*z")
    assert left_value(m, p).isclose(type(left_value(m, p))(x1, 2 * x2, 3 * x2, 4 * x1), 1e-14)
    assert left_gateaux(m, p).isclose(type(left_value(m, p))(1, 2, 3, 4), 1e-14)
    with pytest.raises(TypeError):
        right_value(m, p)


def test_constant_map_has_zero_derivative():
    m = RightGMap(FR, "1", "2", "3*i", "4")
    assert right_gateaux(m, (0.1, 0.2, 0.3)) == ZERO
    cm = m.components()
    for side in (RIGHT, LEFT):
        r1, r2 = cr_residual(cm, (0.1, 0.2, 0.3), side)
        assert r1 == ZERO and r2 == ZERO


def test_example_components_match_hand_evaluation(rng):
    cm = RightGMap(FR, "z", "z", "0", "0").components()
    from quatmono.monogenic import example_map
    ex = example_map(FR)
    for p in _points(rng, 10):
        a, b = xi(FR, p)
        want = (cmath.exp(a) + b * b, a * cmath.sin(b), b * b, cmath.exp(a))
        got = ex.value(p).components()
        np.testing.assert_allclose(got, want, rtol=1e-14)
    assert cm.value((1, 0, 0)) == ONE


# -- Gateaux limit ------------------------------------------------------------

def test_gateaux_residual_linear_map_is_exactly_zero():
    m = RightGMap(FR, "2*z+1", "z", "i*z", "3")
    res = gateaux_limit_residual(m, (0.25, -0.5, 0.125), (1, 0.5, -2), exact=True)
    assert res == [0.0] * 6
    assert gateaux_limit_residual(m, (0.3, 0.1, 0.2), (0, 0, 0)) == [0.0] * 6


def test_gateaux_residual_first_order_decay():
    m = RightGMap(FR, "z^2", "z^2", "0", "0")
    res = gateaux_limit_residual(m, (0.3, 0.1, -0.2), (1, 1, 1), [1e-2, 5e-3, 2.5e-3])
    assert abs(res[0] / res[1] - 2) < 1e-3 and abs(res[1] / res[2] - 2) < 1e-3


def test_gateaux_left_side_and_bad_eps():
    m = LeftGMap(FR, "exp(z)", "z^2", "sin(z)", "z")
    res = gateaux_limit_residual(m, (0.3, 0.1, -0.2), (0.5, -1, 1))
    assert res[-1] < 1e-4 and res[0] > res[-1]
    with pytest.raises(ValueError):
        gateaux_limit_residual(m, (0, 0, 0), (1, 0, 0), [0.0])


# -- CR analogues and H-monogenicity --------------------------------------------

def test_cr_residuals_vanish_for_g_maps(rng):
    for _ in range(5):
        fr = Frame.random(rng)
        fs = [rand_poly(rng) for _ in range(4)]
        r = RightGMap(fr, *fs).components()
        l = LeftGMap(fr, *fs).components()
        for p in sample_points(fr, BOX, 10, seed=1):
            assert cr_residual_norm(r, p, RIGHT) <= 1e-12
            assert cr_residual_norm(l, p, LEFT) <= 1e-12


def test_example1_cr_residuals_bounded_away(rng):
    from quatmono.monogenic import example_map
    ex = example_map(FR)
    for p in _points(rng, 10):
        assert cr_residual_norm(ex, p, RIGHT) > 1e-3
        assert cr_residual_norm(ex, p, LEFT) > 1e-3


def test_h_test_example1_coefficients(rng):
    from quatmono.monogenic import example_map
    ex = example_map(EXAMPLE_FRAME)
    for p in _points(rng, 5, EXAMPLE_FRAME):
        t = h_monogenic_test(ex, p)
        a, b = xi(EXAMPLE_FRAME, p)
        assert t.ok
        (l1, m1), (l2, m2), (l3, m3), (l4, m4) = t.coefficients
        assert abs(l1 - cmath.exp(a)) < 1e-12 and abs(m1 - 2 * b) < 1e-12
        assert abs(l2 - cmath.sin(b)) < 1e-12 and abs(m2 - a * cmath.cos(b)) < 1e-12
        assert abs(l3) < 1e-12 and abs(m3 - 2 * b) < 1e-12
        assert abs(l4 - cmath.exp(a)) < 1e-12 and abs(m4) < 1e-12


def test_h_test_rejects_coordinate_function():
    brk = ExprComponentMap(EXAMPLE_FRAME, ["0", "0", "0", "0"])
    assert h_monogenic_test(brk, (0.2, 0.3, 0.4)).ok
    raw = RawComponentMap(EXAMPLE_FRAME, [lambda x, y, z: x] + [lambda x, y, z: 0] * 3)
    assert not h_monogenic_test(raw, (0.2, 0.3, 0.4)).ok


def test_h_test_g_maps_give_derivative_coefficients(rng):
    m = RightGMap(FR, "z^3", "exp(z)", "sin(z)", "z^2")
    cm = m.components()
    p = (0.3, -0.4, 0.2)
    a, b = xi(FR, p)
    t = h_monogenic_test(cm, p)
    want = [(3 * a * a, 0), (0, cmath.exp(b)), (cmath.cos(a), 0), (0, 2 * b)]
    np.testing.assert_allclose(np.array(t.coefficients), np.array(want), atol=1e-12)


def test_rank_deficient_span():
    fr = Frame(1j, 1j, 2, 2)
    cm = ExprComponentMap(fr, ["xi1", "0", "0", "0"])
    with pytest.raises(RankDeficientFrame):
        h_monogenic_test(cm, (0.1, 0.2, 0.3))


# -- Hausdorff decompositions ---------------------------------------------------

def _check_decomposition(cm, dec, p):
    assert dec.reconstruction_error(cm) <= 1e-10 * (1 + norm(cm.partials(p)[0]))
    assert norm(dec.derivative() - cm.partials(p)[0]) <= 1e-10 * (1 + norm(cm.partials(p)[0]))


def test_example1_decomposition(rng):
    from quatmono.monogenic import example_map
    ex = example_map(FR)
    p = (0.2, -0.1, 0.3)
    dec = hausdorff_decomposition(ex, p)
    # U3 = xi2^2 has no dxi1 part, U4 = exp(xi1) no dxi2 part: six pairs remain
    assert len(dec.pairs) == 6
    _check_decomposition(ex, dec, p)
    a, b = xi(FR, p)
    dz = FR.dzeta((0.3, 0.7, -0.2))
    d1, d2 = dz.q1, dz.q2
    six = (mul(mul(cmath.exp(a) * E1, dz), E1) + mul(mul(E3, dz), 2 * b * E4)
           + mul(mul(a * cmath.cos(b) * E2, dz), E2) + mul(mul(E4, dz), cmath.sin(b) * E3)
           + mul(mul(2 * b * E3, dz), E2) + mul(mul(cmath.exp(a) * E4, dz), E1))
    assert dec.differential(dz).isclose(six, 1e-12)
    want = type(dz)((cmath.exp(a)) * d1 + 2 * b * d2, cmath.sin(b) * d1 + a * cmath.cos(b) * d2,
                    2 * b * d2, cmath.exp(a) * d1)
    assert six.isclose(want, 1e-12)


def test_g_map_single_pair_and_canonical_agree(rng):
    for cls in (RightGMap, LeftGMap):
        m = cls(FR, "z^2+i", "exp(z)", "z^3", "cos(z)")
        cm = m.components()
        for p in _points(rng, 5):
            single = gateaux_decomposition(m, p)
            canon = hausdorff_decomposition(cm, p)
            _check_decomposition(cm, single, p)
            _check_decomposition(cm, canon, p)
            assert norm(single.derivative() - canon.derivative()) <= 1e-10


def test_zero_map_decomposition():
    cm = ExprComponentMap(FR, ["0"] * 4)
    dec = hausdorff_decomposition(cm, (0.1, 0.2, 0.3))
    assert dec.pairs == ()
    assert dec.differential(FR.dzeta((1, 2, 3))) == ZERO


def test_decomposition_requires_h_monogenic():
    raw = RawComponentMap(FR, [lambda x, y, z: x] + [lambda x, y, z: 0] * 3)
    with pytest.raises(NotHMonogenic):
        hausdorff_decomposition(raw, (0.2, 0.3, 0.4))
    with pytest.raises(NotHMonogenic):
        hausdorff_derivative(raw, (0.2, 0.3, 0.4))


def test_hausdorff_derivative_examples():
    p = (0.1, 0.4, -0.3)
    sq = RightGMap(FR, "z^2", "z^2", "0", "0")
    assert hausdorff_derivative(sq.components(), p).isclose(2 * embed(FR, p), 1e-12)
    assert hausdorff_derivative(ExprComponentMap(FR, ["3"] * 4), p) == ZERO
    from quatmono.monogenic import example_map
    a, b = xi(FR, p)
    want = (cmath.exp(a) + 2 * b, cmath.sin(b) + a * cmath.cos(b), 2 * b, cmath.exp(a))
    np.testing.assert_allclose(hausdorff_derivative(example_map(FR), p).components(), want,
                               rtol=1e-13)


def test_random_right_maps_are_right_h_monogenic(rng):
    for _ in range(50):
        fr = Frame.random(rng)
        m = RightGMap(fr, *(rand_poly(rng) for _ in range(4)))
        cm = m.components()
        rep = classify(cm, BOX, n_samples=8, seed=int(rng.integers(100)))
        assert rep.right_G and rep.right_H and rep.H
        for p in sample_points(fr, BOX, 3, seed=7):
            d = hausdorff_derivative(cm, p)
            assert norm(d - m.gateaux(p)) <= 1e-9 * (1 + norm(d))


# -- products ---------------------------------------------------------------------

def test_product_values_and_product_rule(rng):
    f = RightGMap(FR, "z^2", "exp(z)", "sin(z)", "z").components()
    g = LeftGMap(FR, "cos(z)", "z^3", "i*z", "2").components()
    fg = product(f, g)
    raw_f = RawComponentMap(FR, [(lambda k: lambda x, y, z: f.value((x, y, z)).components()[k])(k)
                                 for k in range(4)])
    raw_fg = product(raw_f, g)
    for p in _points(rng, 100):
        want = mul(f.value(p), g.value(p))
        assert fg.value(p).isclose(want, 1e-12 * (1 + norm(want)))
    for p in _points(rng, 10):
        fp, gp = f.partials(p), g.partials(p)
        for j in range(3):
            rule = mul(fp[j], g.value(p)) + mul(f.value(p), gp[j])
            assert norm(fg.partials(p)[j] - rule) <= 1e-8 * (1 + norm(rule))
            assert norm(raw_fg.partials(p)[j] - rule) <= 1e-6 * (1 + norm(rule))
        assert h_monogenic_test(fg, p).ok


def test_product_with_unit_and_frame_mismatch():
    f = RightGMap(FR, "z^2", "exp(z)", "sin(z)", "z").components()
    one = ExprComponentMap(FR, ["1", "1", "0", "0"])
    p = (0.3, 0.2, 0.1)
    assert product(f, one).value(p).isclose(f.value(p), 1e-14)
    assert product(one, f).value(p).isclose(f.value(p), 1e-14)
    with pytest.raises(FrameMismatch):
        product(f, ExprComponentMap(Frame(1j, 3j, 1, 2), ["1", "1", "0", "0"]))


def test_require_gmap():
    with pytest.raises(NotAnalyticMap):
        require_gmap(ExprComponentMap(FR, ["1"] * 4))


# -- Taylor ----------------------------------------------------------------------

def test_taylor_of_square_about_origin():
    m = RightGMap(FR, "z^2", "z^2", "0", "0")
    c = taylor_expand(m, (0, 0, 0), 4)
    assert c[0] == ZERO and c[1] == ZERO
    assert c[2].isclose(ONE, 1e-15)
    assert all(q == ZERO for q in c[3:])


def test_zeta_power_matches_repeated_multiplication(rng):
    p0, p = (0.1, 0.2, 0.3), (0.4, -0.1, 0.2)
    d = embed(FR, p) - embed(FR, p0)
    acc = ONE
    for n in range(8):
        assert zeta_power(FR, p0, p, n).isclose(acc, 1e-14)
        acc = mul(acc, d)


@pytest.mark.parametrize("cls", [RightGMap, LeftGMap])
def test_taylor_polynomial_exact(cls):
    m = cls(FR, "z^3-2*z", "(z+1)^4", "i*z^2", "5")
    p0, p = (0.1, 0.2, -0.1), (0.5, -0.3, 0.4)
    coeffs = taylor_expand(m, p0, 4)
    assert norm(eval_taylor(coeffs, FR, p0, p, m.side) - m.value(p)) <= 1e-12


@pytest.mark.parametrize("cls", [RightGMap, LeftGMap])
def test_taylor_exp_converges_geometrically(cls):
    m = cls(FR, "exp(z)", "exp(2*z)", "sin(z)", "cos(z)")
    p0, p = (0.0, 0.0, 0.0), (0.1, 0.05, -0.05)
    sums = partial_sums(taylor_expand(m, p0, 14), FR, p0, p, m.side)
    errs = [norm(m.value(p) - s) for s in sums]
    assert errs[-1] < 1e-14
    ratios = [errs[n + 1] / errs[n] for n in range(8)]
    assert max(ratios) <= 0.5


def test_taylor_center_equals_probe():
    m = RightGMap(FR, "exp(z)", "z", "sin(z)", "1/(z-3)")
    p0 = (0.2, 0.1, 0.3)
    for s in partial_sums(taylor_expand(m, p0, 5), FR, p0, p0):
        assert norm(s - m.value(p0)) == 0


def test_wrong_side_series_fails():
    m = RightGMap(FR, "z^2", "z", "z^3", "z^2")
    p0, p = (0.1, 0.2, 0.3), (0.3, 0.1, 0.2)
    coeffs = taylor_expand(m, p0, 3)
    assert norm(eval_taylor(coeffs, FR, p0, p, LEFT) - m.value(p)) > 1e-3


# -- classification ----------------------------------------------------------

def test_classify_examples():
    from quatmono.monogenic import example_map
    rep = classify(example_map(FR), BOX)
    assert (rep.H, rep.right_G, rep.left_G, rep.right_H, rep.left_H) == (True, False, False,
                                                                           False, False)
    rep = classify(RightGMap(FR, "z^2", "exp(z)", "z", "sin(z)").components(), BOX)
    assert rep.right_G and rep.right_H and rep.H and not rep.left_G
    raw = RawComponentMap(FR, [lambda x, y, z: x] + [lambda x, y, z: 0] * 3)
    rep = classify(raw, BOX, n_samples=16)
    assert not any((rep.H, rep.right_G, rep.left_G, rep.right_H, rep.left_H))
    assert rep.points_tested == 16


def test_identity_map_is_both_sided():
    rep = classify(RightGMap(FR, "z", "z", "0", "0").components(), BOX)
    assert rep.right_G and rep.left_G


def test_lattice_enforced_and_recorded():
    # with tol below the CR noise but h_tol generous, closure kicks in only via adjustments
    cm = RightGMap(FR, "z^2", "exp(z)", "z", "sin(z)").components()
    rep = classify(cm, BOX, n_samples=8, tol=1e-8, h_tol=0.0)
    assert rep.right_G <= rep.right_H <= rep.H
    assert rep.left_G <= rep.left_H <= rep.H
    if rep.residuals["h_span"] > 0:
        assert "H" in rep.adjusted


def test_classify_deterministic():
    from quatmono.monogenic import example_map
    a = classify(example_map(FR), BOX, seed=3).to_dict()
    b = classify(example_map(FR), BOX, seed=3).to_dict()
    assert a == b


def test_sample_points_avoid_tube():
    pts = sample_points(FR, BOX, 50, seed=0)
    assert len(pts) == 50 and all(BOX.contains(p) for p in pts)
    assert all(min(abs(v) for v in xi(FR, p)) > 1e-6 for p in pts)


def test_fiber_constancy_of_right_map(rng):
    from quatmono.algebra import f1
    m = RightGMap(FR, "z^2", "exp(z)", "sin(z)", "z^3")
    from quatmono.monogenic.classify import _fiber_direction
    d1 = _fiber_direction(FR, 0)
    for p in _points(rng, 5):
        q = np.asarray(p) + 0.3 * d1
        assert abs(xi(FR, q)[0] - xi(FR, p)[0]) < 1e-14
        assert abs(xi(FR, q)[1] - xi(FR, p)[1]) > 1e-3
        assert abs(f1(m.value(q)) - f1(m.value(p))) < 1e-12
    assert criterion_representable(m.components(), _points(rng, 2), RIGHT)[0] is True


def test_cr_holds_with_finite_difference_partials(rng):
    # independent of the chain-rule partials: differentiate the values numerically
    for cls, side in ((RightGMap, RIGHT), (LeftGMap, LEFT)):
        m = cls(FR, "z^3-z", "exp(z)", "sin(z)", "z^2")
        raw = RawComponentMap(FR, [(lambda k: lambda x, y, z: m.value((x, y, z)).components()[k])(k)
                                   for k in range(4)])
        for p in _points(rng, 10):
            assert cr_residual_norm(raw, p, side) < 1e-7
            other = LEFT if side == RIGHT else RIGHT
            assert cr_residual_norm(raw, p, other) > 1e-3
