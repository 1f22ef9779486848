"""Shared strategies and equations."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qriccati.exact import CQ, Polynomial, RationalFunction
from qriccati.parsing import parse_expression as P
from qriccati.riccati import RiccatiEquation

# -- hypothesis strategies ----------------------------------------------------

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gaussian = st.builds(CQ, small_fractions, small_fractions)
real_gaussian = st.builds(CQ, small_fractions)


def polynomials(max_degree: int = 4, coeffs=gaussian):
    return st.lists(coeffs, min_size=0, max_size=max_degree + 1).map(Polynomial)


def nonzero_polynomials(max_degree: int = 4, coeffs=gaussian):
    return polynomials(max_degree, coeffs).filter(lambda p: not p.is_zero)


def rational_functions(max_degree: int = 3, coeffs=gaussian):
    return st.builds(RationalFunction, polynomials(max_degree, coeffs), nonzero_polynomials(max_degree, coeffs))


def nonzero_rational_functions(max_degree: int = 3, coeffs=gaussian):
    return st.builds(RationalFunction, nonzero_polynomials(max_degree, coeffs), nonzero_polynomials(max_degree, coeffs))


q_values = st.sampled_from([CQ(Fraction(1, 2)), CQ(Fraction(-1, 2)), CQ(Fraction(3, 10)),
                            CQ(Fraction(1, 5), Fraction(3, 10)), CQ(3), CQ(Fraction(-5, 3))])


# -- worked equations -----------------------------------------------------------

HALF = Fraction(1, 2)


@pytest.fixture
def poly_example():
    """q = 1/2, A = z^3 + 6z^2 + 7z with the polynomial solution 2z + 4."""
    return RiccatiEquation.of(HALF, P("z^3+6*z^2+7*z")), P("2*z+4")


@pytest.fixture
def pair_example():
    """q = -1/2, A = -6z/((z+1)(z-2)) with solutions 1/(z+1), -2/(z+1)."""
    return RiccatiEquation.of(-HALF, P("-6*z/((z+1)*(z-2))")), P("1/(z+1)"), P("-2/(z+1)")


@pytest.fixture
def family_example():
    """q = 1/2, A = 14/(25z): rational solutions in a one-parameter family.

    Built from s(z) = z^2: t = (q+1)(s(z) - s(z/q))/(s(qz) - s(z/q)) = 6/5 and
    A = (c0/q - 1)/((q-1)z) with c0 = (q+1)t - t^2.
    """
    return RiccatiEquation.of(HALF, P("14/(25*z)")), P("2/(5*z)")


@pytest.fixture
def square_example():
    """q = 1/2, A = 72/z = -(q-1) z s^2 with s = -12/z; solutions 8/z and -9/z."""
    return RiccatiEquation.of(HALF, P("72/z")), P("-12/z"), P("8/z"), P("-9/z")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
