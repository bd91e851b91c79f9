import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quatmono import analytic as an
from quatmono.analytic import (Add, Call, Div, Mul, Neg, Num, PowerSeries, Pow, Sub, Var,
                               evaluate, lambdify, parse, taylor_coeffs, taylor_coeffs_symbolic,
                               to_string)
from quatmono.errors import (ExprSyntaxError, NonIntegerExponent, PoleError, RadiusExceeded,
                             UnknownFunction)

from conftest import rand_poly

Z = Var("z")


# -- parser ---------------------------------------------------------------

def test_parse_examples():
    assert parse("exp(z) + z^2") == Add(Call("exp", Z), Pow(Z, 2))
    assert parse("z*sin(z)")(0) == 0
    assert parse("2*i") == Mul(Num(2), Num(1j))
    assert parse("  1.5e-3 ") == Num(0.0015)
    assert parse("z^-2") == Pow(Z, -2)


def test_unary_minus_binds_tighter_than_power():
    assert parse("-z^2") == Pow(Neg(Z), 2)
    assert parse("-z^2")(1j) == -1
    assert parse("-(z^2)")(2) == -4


def test_bare_e_is_unknown():
    with pytest.raises(UnknownFunction) as exc:
        parse("e^z")
    assert exc.value.offset == 0


@pytest.mark.parametrize("src,cls,offset", [
    ("z +* 2", ExprSyntaxError, 3),
    ("z^1.5", NonIntegerExponent, 2),
    ("z^w", NonIntegerExponent, 2),
    ("log(z)", UnknownFunction, 0),
    ("sin z", ExprSyntaxError, 4),
    ("(z + 1", ExprSyntaxError, 6),
    ("z $ 1", ExprSyntaxError, 2),
    ("ζ + z", ExprSyntaxError, 0),
    ("z + ζ", ExprSyntaxError, 4),
    ("", ExprSyntaxError, 0),
])
def test_parse_errors_report_byte_offset(src, cls, offset):
    with pytest.raises(cls) as exc:
        parse(src)
    assert exc.value.offset == offset
    assert f"offset {offset}" in str(exc.value)


def test_multivariable_parse():
    e = parse("xi1*sin(xi2)", ("xi1", "xi2"))
    assert evaluate(e, {"xi1": 2, "xi2": 0.5}) == 2 * cmath.sin(0.5)
    with pytest.raises(UnknownFunction):
        parse("z", ("xi1", "xi2"))


# Trees in the shape the parser produces: literals are non-negative reals or i.
literals = st.one_of(
    st.floats(0, 1e6, allow_nan=False).map(Num),
    st.just(Num(1j)),
)
leaves = st.one_of(literals, st.just(Z))


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Div, children, children),
        st.builds(Pow, children, st.integers(-3, 6)),
        st.builds(Call, st.sampled_from(["exp", "sin", "cos"]), children),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@given(trees)
def test_print_parse_roundtrip(e):
    assert parse(to_string(e)) == e


# -- evaluation -----------------------------------------------------------

def test_eval_examples():
    assert an.exp()(0) == 1
    assert abs(parse("sin(z)")(1) - 0.8414709848) < 1e-10
    series = PowerSeries(0, [1 / math.factorial(k) for k in range(20)])
    assert abs(series(1) - math.e) < 1e-15


def test_builtins():
    assert an.identity()(3j) == 3j
    assert an.const(2 + 1j)(5) == 2 + 1j
    assert an.monomial(3)(2) == 8
    assert an.cos()(0) == 1 and an.sin()(0) == 0
    assert set(an.BUILTINS) == {"exp", "sin", "cos", "identity"}


def test_pole_detection():
    with pytest.raises(PoleError):
        parse("1/z")(0)
    with pytest.raises(PoleError):
        parse("z^-1")(0)
    with pytest.raises(PoleError):
        lambdify(parse("1/(z-1)"), ["z"])(1)


def test_radius_exceeded():
    s = PowerSeries(0, [1, 1, 1], radius=1.0)
    assert s(0.5) == 1.75
    with pytest.raises(RadiusExceeded):
        s(1.0)
    with pytest.raises(RadiusExceeded):
        s.recenter(2)
    with pytest.raises(ValueError):
        PowerSeries(0, [1], radius=0)


def test_lambdify_matches_evaluate(rng):
    e = parse("exp(z)*sin(z)/(z^2+3) - cos(z)^3 + i*z")
    f = lambdify(e, ["z"])
    for z in rng.normal(size=10) + 1j * rng.normal(size=10):
        assert abs(f(z) - e(z)) < 1e-13


# -- differentiation ------------------------------------------------------

def test_derivative_examples():
    assert an.derivative(parse("z^2")) == Mul(Num(2), Z)
    assert an.derivative(an.exp()) == an.exp()
    assert an.derivative(PowerSeries(0, [1, 2, 3]))(1) == 2 + 6


FD_CASES = ["exp(z)+z^2", "z*sin(z)", "cos(z)/(z^2+4)", "sin(exp(z))", "(z-1)^5", "1/(1+z^2)"]


@pytest.mark.parametrize("src", FD_CASES)
def test_derivative_vs_finite_difference(src, rng):
    e = parse(src)
    d = an.derivative(e)
    h = 1e-5
    for z in 0.8 * (rng.normal(size=50) + 1j * rng.normal(size=50)):
        fd = (e(z + h) - e(z - h)) / (2 * h)
        assert abs(fd - d(z)) <= 1e-6 * (1 + abs(d(z)))


def test_derivative_linearity_and_leibniz(rng):
    f, g = parse("sin(z)*z^3"), parse("exp(z)/(2+z^2)")
    df, dg = an.derivative(f), an.derivative(g)
    lin = an.derivative(Add(Mul(Num(2.5), f), Mul(Num(-1j), g)))
    prod = an.derivative(Mul(f, g))
    for z in rng.normal(size=20) + 1j * rng.normal(size=20):
        assert abs(lin(z) - (2.5 * df(z) - 1j * dg(z))) < 1e-10 * (1 + abs(lin(z)))
        assert abs(prod(z) - (df(z) * g(z) + f(z) * dg(z))) < 1e-10 * (1 + abs(prod(z)))


# -- Taylor coefficients --------------------------------------------------

def test_taylor_examples():
    np.testing.assert_allclose(taylor_coeffs(an.exp(), 0, 3), [1, 1, 1 / 2, 1 / 6], atol=1e-16)
    np.testing.assert_allclose(taylor_coeffs(parse("z^2"), 1, 2), [1, 2, 1], atol=1e-16)


def test_taylor_order_limit():
    with pytest.raises(ValueError):
        taylor_coeffs(an.exp(), 0, 33)
    assert len(taylor_coeffs(an.exp(), 0, 32)) == 33


@pytest.mark.parametrize("src", ["exp(z)*sin(z)", "cos(z)^3/(z+3)", "z^4-2*z+i", "sin(z/(2+z))"])
def test_jets_match_symbolic_differentiation(src):
    e = parse(src)
    c = 0.3 - 0.2j
    fast = taylor_coeffs(e, c, 6)
    slow = taylor_coeffs_symbolic(e, c, 6)
    np.testing.assert_allclose(fast, slow, rtol=1e-10, atol=1e-12)


def test_recentered_polynomial_is_exact(rng):
    for _ in range(10):
        coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
        p = PowerSeries(0.5j, coeffs)
        c = complex(rng.normal(), rng.normal())
        q = p.recenter(c)
        for z in rng.normal(size=5) + 1j * rng.normal(size=5):
            assert abs(q(z) - p(z)) <= 1e-10 * (1 + abs(p(z)))
        np.testing.assert_allclose(taylor_coeffs(p, c, 5), q.coeffs, rtol=1e-12)


def test_polynomial_string_coefficients(rng):
    src = rand_poly(rng)
    e = parse(src)
    c = taylor_coeffs(e, 0, 5)
    assert abs(an.eval_poly(c, 0.3) - e(0.3)) < 1e-12


@settings(max_examples=30)
@given(st.floats(-1, 1), st.floats(-1, 1))
def test_truncation_bound_for_exp(re, im):
    c = complex(re, im)
    n = 12
    coeffs = taylor_coeffs(an.exp(), c, n)
    h = 0.2 * cmath.exp(1j * re)
    err = abs(an.eval_poly(coeffs, h) - cmath.exp(c + h))
    # the remainder is dominated by the first omitted term
    assert err <= 2 * abs(cmath.exp(c)) * abs(h) ** (n + 1) / math.factorial(n + 1) + 1e-15


def test_series_to_expr_roundtrip():
    s = PowerSeries(1, [1, 0, 2])
    e = s.to_expr()
    assert abs(e(3) - s(3)) < 1e-14
