from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncalg.field import (
    FieldEndo,
    RatFunc,
    apply_endo,
    check_no_periodic,
    fixed_field,
    is_fixed,
    parse_rational,
)
from strategies import nonzero_ratfuncs, ratfuncs

H, C, x = RatFunc.var("H"), RatFunc.var("C"), RatFunc.var("x")
SHIFT, SCALE2, DERIV = FieldEndo.shift(), FieldEndo.scale(2), FieldEndo.deriv()


def test_common_denominator():
    assert H / (H + 1) + 1 / (H + 1) == RatFunc.const(1)


def test_cancellation_gives_canonical_form():
    f = (H**2 - 1) / (H - 1)
    assert f == H + 1
    assert f.den == (H + 1).den
    assert str(f) == "H + 1"


def test_scalar_division():
    assert (H * Fraction(1, 2)) / H == RatFunc.const(Fraction(1, 2))


def test_denominator_is_monic():
    f = RatFunc.const(1) / (H * 3 + 6)
    assert f.den.LC == 1
    assert f == RatFunc.const(Fraction(1, 3)) / (H + 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        H / RatFunc.const(0)


def test_mixing_x_with_h_is_rejected():
    with pytest.raises(ValueError):
        H + x


def test_two_variable_field():
    f = (C * H + C) / (H + 1)
    assert f == C
    assert f.field_tag == "K(C)"
    assert (C / H).field_tag == "K(H,C)"


def test_parse_rational_rejects_floats():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_endomorphism_examples():
    assert apply_endo(SHIFT, H, 1) == H - 1
    assert apply_endo(SCALE2, H**2, 1) == H**2 * 4
    assert apply_endo(DERIV, 1 / x, 1) == -1 / x**2
    assert apply_endo(SHIFT, H, -3) == H + 3


def test_negative_power_of_derivation_is_rejected():
    with pytest.raises(ValueError):
        apply_endo(DERIV, x, -1)


def test_scale_parameter_must_avoid_roots_of_unity():
    for bad in (0, 1, -1):
        with pytest.raises(ValueError):
            FieldEndo.scale(bad)


def test_fixed_elements():
    assert is_fixed(SHIFT, 5)
    assert not is_fixed(SHIFT, H)
    assert not is_fixed(DERIV, x)
    assert is_fixed(SHIFT, C)
    assert fixed_field(SHIFT, "K(H,C)") == "K(C)"
    assert fixed_field(DERIV, "K(x)") == "K"


def test_no_periodic_elements():
    assert check_no_periodic(SHIFT, H)
    assert check_no_periodic(SCALE2, H**3)
    assert check_no_periodic(SHIFT, 7)
    with pytest.raises(ValueError):
        check_no_periodic(DERIV, x)


@given(ratfuncs(), ratfuncs(), st.integers(-3, 3), st.sampled_from([SHIFT, SCALE2, FieldEndo.scale(Fraction(1, 3))]))
@settings(max_examples=60, deadline=None)
def test_automorphisms_are_multiplicative(f, g, n, endo):
    assert apply_endo(endo, f * g, n) == apply_endo(endo, f, n) * apply_endo(endo, g, n)
    assert apply_endo(endo, f + g, n) == apply_endo(endo, f, n) + apply_endo(endo, g, n)


@given(ratfuncs(("x",)), ratfuncs(("x",)))
@settings(max_examples=60, deadline=None)
def test_derivation_leibniz(f, g):
    d = lambda h: apply_endo(DERIV, h, 1)  # noqa: E731
    assert d(f * g) == d(f) * g + f * d(g)


@given(ratfuncs(), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_powers_compose(f, m, n):
    for endo in (SHIFT, SCALE2):
        assert apply_endo(endo, f, m + n) == apply_endo(endo, apply_endo(endo, f, n), m)


@given(ratfuncs(("x",)), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_derivation_powers_compose(f, m, n):
    assert apply_endo(DERIV, f, m + n) == apply_endo(DERIV, apply_endo(DERIV, f, n), m)


@given(nonzero_ratfuncs(("H", "C")), ratfuncs(("H", "C")))
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b):
    assert (b / a) * a == b
    assert a * a.inverse() == RatFunc.const(1)
    assert a - a == RatFunc.const(0)
    assert hash(a * b) == hash(b * a)
