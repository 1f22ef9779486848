from fractions import Fraction

import pytest
from hypothesis import given, settings

from qriccati.exact import CQ, I, RationalFunction, Z
from qriccati.parsing import (
    BinOp,
    Neg,
    ParseError,
    Pow,
    parse_ast,
    parse_expression,
    parse_scalar,
    print_expression,
    tokenize,
)

from conftest import rational_functions


def test_polynomial_and_rational_inputs():
    assert parse_expression("2*z + 4") == RationalFunction(2 * Z + 4)
    A = parse_expression("-6*z/((z+1)*(z-2))")
    assert A == RationalFunction(-6 * Z, (Z + 1) * (Z - 2))


def test_precedence():
    # ^ binds tighter than unary minus
    assert parse_expression("-z^2") == RationalFunction(-(Z**2))
    assert isinstance(parse_ast("-z^2"), Neg)
    assert isinstance(parse_ast("-z^2").operand, Pow)
    # left associativity
    assert parse_expression("8/4/2") == 1
    assert parse_expression("1-2-3") == -4
    assert isinstance(parse_ast("1-2-3").left, BinOp)
    assert parse_expression("2*z^-1") == RationalFunction(2, Z)


def test_literals():
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert parse_scalar("-1/2") == Fraction(-1, 2)
    assert parse_scalar("1/5+3/10*i") == CQ(Fraction(1, 5), Fraction(3, 10))
    assert parse_scalar("i^2") == -1
    assert parse_expression("(1+i)*z") == RationalFunction(Z * (1 + I))


@pytest.mark.parametrize(
    "text,column,fragment",
    [
        ("z^^2", 3, "unexpected"),
        ("z^(2)", 3, "non-integer exponent"),
        ("z^1.5", 3, "non-integer exponent"),
        ("w+1", 1, "unknown identifier"),
        ("(z+1", 5, "unexpected"),
        ("z $ 1", 3, "unexpected character"),
    ],
)
def test_errors_carry_position(text, column, fragment):
    with pytest.raises(ParseError) as err:
        parse_expression(text)
    assert err.value.line == 1
    assert err.value.column == column
    assert fragment in err.value.message


def test_error_lists_expected_tokens():
    with pytest.raises(ParseError) as err:
        parse_expression("z^^2")
    assert err.value.expected == ("integer",)


def test_multiline_positions():
    toks = tokenize("z +\n  1")
    assert (toks[2].line, toks[2].column) == (2, 3)


def test_scalar_rejects_z():
    with pytest.raises(ParseError):
        parse_scalar("z")


def test_division_by_zero_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_expression("1/(z-z)")


@given(rational_functions(max_degree=4))
@settings(max_examples=1000, deadline=None)
def test_print_parse_round_trip(f):
    assert parse_expression(print_expression(f)) == f
