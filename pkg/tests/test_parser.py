from fractions import Fraction

import pytest
from hypothesis import given, settings

from ncalg.field import RatFunc
from ncalg.parser import (
    Add, ElaborationError, Group, Mul, Neg, Num, ParseError, Pow, Sub, Sym,
    elaborate, parse, parse_element, parse_poly, to_text,
)
from ncalg.series import TruncatedSeries, ring_A, series_mul
from ncalg.weyl import WeylLikeElement
from strategies import weyl_elements


def shape(e):
    """Compact nested-tuple view of an Expr, ignoring positions."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Group):
        return ("()", shape(e.inner))
    if isinstance(e, Neg):
        return ("neg", shape(e.arg))
    if isinstance(e, Pow):
        return ("^", shape(e.base), e.exp)
    op = {Add: "+", Sub: "-", Mul: "*"}[type(e)]
    return (op, shape(e.left), shape(e.right))


def test_commutator_expression():
    assert shape(parse("d*x - x*d", "weyl")) == ("-", ("*", "d", "x"), ("*", "x", "d"))


def test_negative_generator_power():
    assert shape(parse("H*X^-1", "A")) == ("*", "H", ("^", "X", -1))


def test_power_of_group_plus_literal():
    assert shape(parse("(x*d)^2 + 3/2", "weyl")) == ("+", ("^", ("()", ("*", "x", "d")), 2), Fraction(3, 2))


def test_precedence_and_associativity():
    assert shape(parse("x+d*x", "weyl")) == ("+", "x", ("*", "d", "x"))
    assert shape(parse("x*d^2", "weyl")) == ("*", "x", ("^", "d", 2))
    assert shape(parse("x d x", "weyl")) == ("*", ("*", "x", "d"), "x")
    assert shape(parse("x - d - x", "weyl")) == ("-", ("-", "x", "d"), "x")


def test_whitespace_is_ignored():
    assert shape(parse("  d *x-x* d ", "weyl")) == shape(parse("d*x-x*d", "weyl"))


def test_signed_rational_literals():
    assert elaborate("-3/4*x", "weyl") == WeylLikeElement.gen("x") * Fraction(-3, 4)
    assert elaborate("2/4", "weyl") == WeylLikeElement.scalar(Fraction(1, 2))


@pytest.mark.parametrize("text,pos", [("x + $", 4), ("x*q", 2), ("x^", 2), ("(x + d", 6), ("x^1.5", 3),
                                      ("1/0", 2)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text, "weyl")
    assert info.value.position == pos


def test_unknown_symbol_depends_on_context():
    parse("y*x", "qplane", Fraction(2))
    with pytest.raises(ParseError):
        parse("y*x", "weyl")
    with pytest.raises(ParseError):
        parse("x*X", "A")


def test_elaborate_relations():
    assert elaborate("d*x", "weyl") == parse_element("x*d + 1", "weyl")
    assert elaborate("0", "weyl").is_zero
    assert elaborate("0", "A").is_exact_zero
    assert elaborate("H*X^-1 * X", "A") == TruncatedSeries.scalar(ring_A(), RatFunc.var("H"))
    hx = elaborate("H*X^-1", "A")
    assert series_mul(hx, elaborate("X", "A")) == elaborate("H", "A")


def test_negative_power_of_noninvertible_generator():
    with pytest.raises(ElaborationError):
        elaborate("x^-1", "weyl")
    with pytest.raises(ElaborationError):
        elaborate("(x*d)^-2", "weyl")


def test_negative_power_of_single_term_series_value():
    assert elaborate("(H*X)^-1", "A") == elaborate("X^-1*H^-1", "A")
    assert elaborate("(2)^-1", "weyl") == WeylLikeElement.scalar(Fraction(1, 2))


def test_quantum_contexts_use_parameter():
    yx = elaborate("y*x", "qplane", Fraction(3))
    assert yx == parse_element("1/3*x*y", "qplane", Fraction(3))
    dx = elaborate("d*x", "qweyl", Fraction(2))
    assert dx == parse_element("2*x*d + 1", "qweyl", Fraction(2))


def test_poly_parser():
    p = parse_poly("(t - 1)^2 + 2")
    assert p.coeffs == (3, -2, 1)


def test_window_truncation():
    s = elaborate("X + X^-5", "A", window=3)
    assert s.low is not None and -5 not in s.coeffs


@given(weyl_elements())
@settings(max_examples=60, deadline=None)
def test_printer_round_trip_weyl(a):
    ctx = {"weyl": "weyl"}.get(a.presentation.kind, a.presentation.kind)
    assert parse_element(to_text(a), ctx, a.presentation.param) == a
