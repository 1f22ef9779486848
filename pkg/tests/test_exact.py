from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qriccati.exact import (
    CQ,
    INDETERMINATE,
    POLE,
    I,
    MathDomainError,
    Polynomial,
    RationalFunction,
    Z,
    delta_q,
    delta_q_iter,
    evaluate,
    normalize,
    poly_gcd,
    q_dilate,
    solve_exact_linear_system,
    squarefree_decomposition,
)
from qriccati.parsing import parse_expression as P

from conftest import gaussian, nonzero_rational_functions, polynomials, q_values, rational_functions


def rf(text):
    return P(text)


# -- scalars --------------------------------------------------------------------


def test_cq_arithmetic_and_printing():
    a = CQ(Fraction(1, 2), 3)
    assert a * a.conjugate() == CQ(Fraction(37, 4))
    assert (a / a) == 1
    assert str(a) == "1/2+3*i"
    assert str(-I) == "-i"
    assert CQ(2) == 2 and hash(CQ(2)) == hash(2)
    assert I**-1 == -I
    with pytest.raises(ZeroDivisionError):
        a / 0


def test_cq_of_parses_strings_and_floats():
    assert CQ.of("3/4") == Fraction(3, 4)
    assert CQ.of(0.5 + 0.25j) == CQ(Fraction(1, 2), Fraction(1, 4))


@given(gaussian, gaussian, gaussian)
def test_cq_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


# -- polynomials ----------------------------------------------------------------


def test_polynomial_basics():
    p = Polynomial([4, 2])
    assert p.degree == 1 and p.leading == 2
    assert Polynomial().degree == -1 and Polynomial().is_zero
    assert str(Polynomial([1, Fraction(3, 2)])) == "1+3/2*z"
    assert str(-(Z**2)) == "-z^2"
    assert p(CQ(-2)) == 0
    assert Polynomial.from_roots([1, -1]) == Z**2 - 1
    assert (Z**3).valuation == 3


def test_polynomial_division():
    a = Z**3 + 6 * Z**2 + 9 * Z + 4
    q, r = divmod(a, Z + 1)
    assert r.is_zero and q == Z**2 + 5 * Z + 4
    assert a.exact_div(Z + 4) == (Z + 1) ** 2
    with pytest.raises(ValueError):
        a.exact_div(Z - 1)


def test_gcd_and_squarefree():
    a = (Z + 1) ** 2 * (Z + 4)
    assert poly_gcd(a, (Z + 1) * (Z - 3)) == Z + 1
    parts = squarefree_decomposition(a)
    assert {(str(f), m) for f, m in parts} == {("4+z", 1), ("1+z", 2)}


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60)
def test_polynomial_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial()


@given(polynomials(), polynomials(3).filter(lambda p: not p.is_zero))
@settings(max_examples=60)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


# -- rational functions -----------------------------------------------------------


def test_normalize_examples():
    assert normalize(Z**2 - 1, Z - 1) == RationalFunction(Z + 1)
    f = normalize(Polynomial(), Z**3)
    assert f.num.is_zero and f.den == Polynomial([1])
    g = normalize(2 * Z + 4, Polynomial([2]))
    assert g.num == Z + 2 and g.den == Polynomial([1])


def test_printer_canonical_forms():
    assert str(rf("(1+3*z/2)/(1-2*z)")) == "(1+3/2*z)/(1-2*z)"
    assert str(rf("2/(5*z)")) == "(2/5)/(z)"
    assert str(rf("1/(z+1)")) == "1/(1+z)"
    assert str(rf("(1/2+i)*z")) == "(1/2+i)*z"


def test_q_dilate_examples():
    assert q_dilate(rf("z+2"), Fraction(1, 2)) == rf("z/2+2")
    assert q_dilate(rf("1/(z+1)"), Fraction(-1, 2)) == rf("2/(2-z)")
    q = CQ(Fraction(2, 3), 1)
    assert q_dilate(rf("z^2"), q) == RationalFunction(Z**2) * q**2
    with pytest.raises(MathDomainError):
        q_dilate(rf("z"), 0)


def test_delta_q_examples():
    q = CQ(Fraction(1, 3))
    assert delta_q(rf("7"), q).is_zero
    assert delta_q(rf("z"), q) == 1
    assert delta_q(rf("z^2"), q) == RationalFunction(Z) * (q + 1)
    assert delta_q_iter(rf("z^2"), q, 2) == q + 1
    assert delta_q_iter(rf("z"), q, 2).is_zero
    assert delta_q_iter(rf("z^3"), q, 1) == RationalFunction(Z**2) * (q**2 + q + 1)
    for bad in (0, 1):
        with pytest.raises(MathDomainError, match="undefined"):
            delta_q(rf("z"), bad)


def test_evaluate_examples():
    assert evaluate(rf("(z+1)/(z-1)"), 1) is POLE
    assert evaluate(rf("2*z+4"), 0) == 4
    assert evaluate(rf("(z-1)/(z+1)"), 3) == pytest.approx(0.5)
    assert rf("1/z")(CQ(0)) is POLE
    assert POLE is not INDETERMINATE


@given(rational_functions())
@settings(max_examples=60)
def test_normalize_idempotent(f):
    g = normalize(f.num, f.den)
    assert g == f and normalize(g.num, g.den) == g
    assert f.den.leading == 1


@given(rational_functions(), nonzero_rational_functions(), rational_functions())
@settings(max_examples=40, deadline=None)
def test_field_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f / g) * g == f
    assert f - f == RationalFunction()


@given(rational_functions(), q_values, q_values)
@settings(max_examples=40, deadline=None)
def test_dilation_composes(f, q1, q2):
    assert q_dilate(q_dilate(f, q1), q2) == q_dilate(f, q1 * q2)


@given(rational_functions(), rational_functions(), gaussian, gaussian, q_values)
@settings(max_examples=40, deadline=None)
def test_delta_q_linear(f, g, a, b, q):
    assert delta_q(f * a + g * b, q) == delta_q(f, q) * a + delta_q(g, q) * b


@given(rational_functions(), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
@settings(max_examples=80)
def test_exact_and_float_evaluation_agree(f, z):
    zq = CQ.of(z)
    exact = f(zq)
    assume(exact is not POLE)
    assume(abs(complex(f.den(zq))) > 1e-3 * max(1.0, max(abs(complex(c)) for c in f.den.coeffs)))
    num = f.evaluate(complex(zq))
    assert abs(num - complex(exact)) <= 1e-12 * max(1.0, abs(complex(exact)))


# -- linear algebra ------------------------------------------------------------------


def test_exact_linear_system():
    rows = [[1, 2], [2, 4]]
    part, null = solve_exact_linear_system(rows, [3, 6])
    assert part is not None and len(null) == 1
    assert solve_exact_linear_system(rows, [3, 7])[0] is None
    x, null = solve_exact_linear_system([[1, I], [0, 2]], [1 + I, 4])
    assert x == [1 - I, 2] and null == []
