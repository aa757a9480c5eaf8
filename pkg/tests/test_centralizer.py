from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ncalg.centralizer import (
    Construction, DegenerateDegreeZeroError, PreconditionError, bounded_commutant,
    centralize_deg0, centralize_posdeg, centralize_posdeg_report, centre_probe, centre_summary,
    check_ccc_pair, posdeg_obstruction, verify_eigenspace_factorization,
    verify_semisimple_uniqueness,
)
from ncalg.classify import CentralElementError
from ncalg.field import RatFunc, apply_endo, is_fixed
from ncalg.parser import parse_element
from ncalg.series import TruncatedSeries, commutator, leading, ring_A, series_degree, series_mul
from oracles import XS, pseudo_product

H = RatFunc.var("H")


def S(text, ring="A", param=None):
    return parse_element(text, ring, param)


def commutes(a, b, window):
    com = series_mul(a, b, window) - series_mul(b, a, window)
    return com.truncate(window).is_zero_within_window


# -- degree zero -----------------------------------------------------------


def test_deg0_returns_u_for_its_own_leading_coefficient():
    u = S("H + X^-1")
    w = centralize_deg0(u, H, 8)
    assert w.construction is Construction.TRIANGULAR_SOLVE
    assert w.commutes_to_window
    assert w.element.agrees_with(u)


def test_deg0_constant_gives_constant():
    w = centralize_deg0(S("H + X^-1"), 1, 8)
    assert w.element.agrees_with(S("1"))


def test_deg0_square_of_leading_coefficient():
    u = S("H + X^-1")
    w = centralize_deg0(u, H * H, 8)
    assert w.commutes_to_window
    assert commutes(w.element, u, 8)
    assert w.element.agrees_with(series_mul(u, u, 10))


@pytest.mark.parametrize("a0,b0", [(H, H + 1), (H * H, 1 / H), (Fraction(2), H**3)])
def test_deg0_solve_is_multiplicative(a0, b0):
    u = S("H + H^2*X^-1 + X^-3")
    T = 7
    ca, cb, cab = (centralize_deg0(u, f, T).element for f in (a0, b0, a0 * b0))
    assert cab.agrees_with(series_mul(ca, cb, T))


def test_deg0_is_deterministic():
    u = S("H + X^-2")
    assert centralize_deg0(u, H + 3, 6).element == centralize_deg0(u, H + 3, 6).element


def test_deg0_pseudo_differential_against_sympy_products():
    u = S("x + t^-1", "R")
    T = 6
    c = centralize_deg0(u, RatFunc.var("x") ** 2, T).element
    to_sym = lambda s: {e: sympy.sympify(str(f).replace("^", "**"), locals={"x": XS})
                        for e, f in s.coeffs.items()}
    low = -T
    left = pseudo_product(to_sym(c), to_sym(u), low)
    right = pseudo_product(to_sym(u), to_sym(c), low)
    for e in range(low + 2, 1):
        assert sympy.simplify(left.get(e, 0) - right.get(e, 0)) == 0


def test_deg0_refuses_coefficient_field_elements():
    with pytest.raises(PreconditionError, match="case 1"):
        centralize_deg0(S("H"), H, 6)


def test_deg0_refuses_fixed_leading_coefficient():
    with pytest.raises(DegenerateDegreeZeroError):
        centralize_deg0(S("1 + X^-1"), 1, 6)


def test_deg0_refuses_wrong_degree():
    with pytest.raises(PreconditionError):
        centralize_deg0(S("X + H"), H, 6)


# -- nonzero degree --------------------------------------------------------


@pytest.mark.parametrize("u,ring,target,expected", [("X", "A", 1, "X"), ("X^2", "A", 1, "X"),
                                                    ("t^2", "R", 1, "t")])
def test_posdeg_examples(u, ring, target, expected):
    w = centralize_posdeg(S(u, ring), target, 6)
    assert w is not None and w.commutes_to_window
    assert w.construction is Construction.LEADING_TERM_MATCH
    assert w.element.agrees_with(S(expected, ring))


def test_posdeg_square_root_like_witness():
    u = S("X^2 + H")
    w = centralize_posdeg(u, 1, 7)
    assert w.commutes_to_window
    assert series_degree(w.element) == 1
    assert commutes(u, w.element, 8)


def test_posdeg_pseudo_differential_witness():
    u = S("t^2 + x", "R")
    w = centralize_posdeg(u, 1, 6)
    assert w.commutes_to_window and leading(w.element) == (RatFunc.const(1), 1)


def test_posdeg_obstruction_at_leading_order():
    # H*f(H+2) = (H+1)*f(H) has no rational solution f, so nothing of degree 1 commutes with H*X^2.
    report = centralize_posdeg_report(S("H*X^2"), 1, 6)
    assert report.witness is None
    assert report.obstruction.order == 0
    assert posdeg_obstruction(S("H*X^2"), 1, 6) is not None


def test_posdeg_refuses_degree_zero():
    with pytest.raises(PreconditionError):
        centralize_posdeg(S("H + X^-1"), 1, 6)


@pytest.mark.parametrize("u", ["H*X + 1", "X + H^2*X^-1", "(H^2+1)*X - X^-2", "2*X^-1 + H*X^-2"])
def test_leading_coefficient_rigidity(u):
    u = S(u)
    n = series_degree(u)
    w = centralize_posdeg(u, n, 6)
    assert w is not None
    ratio = leading(w.element)[0] / leading(u)[0]
    assert is_fixed(u.ring.twist, ratio)


@pytest.mark.parametrize("u", ["X^2 + H", "X + H", "t + x", "t^2 + x"])
def test_power_compatibility(u):
    ring = "R" if "t" in u else "A"
    u = S(u, ring)
    T = 6
    v = centralize_posdeg(u, 1, T).element
    for k in (2, 3):
        w = centralize_posdeg(u, k, T).element
        power = v
        for _ in range(k - 1):
            power = series_mul(power, v, T + 2)
        scale = leading(w)[0] / leading(power)[0]
        assert is_fixed(u.ring.twist, scale)
        rest = w - series_mul(TruncatedSeries.scalar(u.ring, scale), power, T + 2)
        assert rest.is_zero_within_window or series_degree(rest) < k
        assert commutes(u, rest, T - 1)


# -- bounded commutants and centres ---------------------------------------


def test_pseudo_differential_case_one_commutant():
    com = bounded_commutant([S("x", "R")], range(-3, 4), B=2, window=8)
    assert com.dim == 5
    for z in com.elements():
        assert set(z.coeffs) == {0}


@pytest.mark.parametrize("ring,expected", [("A", {0: "K"}), ("B", {0: "K"}), ("C", {0: "K(C)"}),
                                           ("E", {0: "K(C)"}), ("R", {0: "K"})])
def test_centre_probe(ring, expected):
    from ncalg.series import ring_by_name

    tag = ring_by_name(ring, 2 if ring in "BE" else None)
    assert centre_summary(centre_probe(tag, range(-2, 3), T=6)) == expected


def test_centre_probe_is_stable_across_windows():
    from ncalg.series import ring_R

    small = centre_summary(centre_probe(ring_R(), range(-2, 3), T=5))
    large = centre_summary(centre_probe(ring_R(), range(-2, 3), T=8))
    assert small == large


# -- identity checks -------------------------------------------------------


def test_eigenspace_factorization():
    a, p = S("H"), S("X")
    lam = leading(commutator(a, p))[0]
    assert verify_eigenspace_factorization(a, p, lam, [1, H, H * H])
    assert verify_eigenspace_factorization(a, p, lam, [1])
    assert verify_eigenspace_factorization(a, p, lam, [1], sample_q=[S("H*X")])
    assert not verify_eigenspace_factorization(a, p, lam, [1], sample_q=[S("X^2")])


def test_eigenspace_factorization_preconditions():
    with pytest.raises(PreconditionError):
        verify_eigenspace_factorization(S("H"), S("X"), 0, [1])
    with pytest.raises(PreconditionError):
        verify_eigenspace_factorization(S("H"), S("X"), 5, [1])


def test_semisimple_uniqueness_series():
    a, p = S("H"), S("X")
    lam = leading(commutator(a, p))[0]
    assert verify_semisimple_uniqueness(a, S("2*H + 3"), p, lam, lam * 2)
    assert verify_semisimple_uniqueness(a, a, p, lam, lam)


def test_semisimple_uniqueness_weyl():
    a, b, p = (parse_element(t, "weyl") for t in ("x*d", "3*x*d + 1", "x"))
    assert verify_semisimple_uniqueness(a, b, p, 1, 3)
    with pytest.raises(PreconditionError):
        verify_semisimple_uniqueness(a, parse_element("d", "weyl"), p, 1, 3)


def test_ccc_weyl_examples():
    xd, xd2 = parse_element("x*d", "weyl"), parse_element("(x*d)^2", "weyl")
    r = check_ccc_pair(xd, xd2, bound=6)
    assert r.commuting and r.bounded_centralizers_equal and r.consistent
    r = check_ccc_pair(parse_element("x", "weyl"), parse_element("d", "weyl"), bound=6)
    assert not r.commuting and r.intersection_trivial and r.consistent
    assert check_ccc_pair(xd, xd).bounded_centralizers_equal
    with pytest.raises(CentralElementError):
        check_ccc_pair(parse_element("3", "weyl"), xd)


def test_ccc_series_examples():
    r = check_ccc_pair(S("X"), S("X^2"), bound=3, T=6)
    assert r.commuting and r.consistent
    r = check_ccc_pair(S("X"), S("H*X"), bound=3, T=6)
    assert not r.commuting and r.consistent
    with pytest.raises(CentralElementError):
        check_ccc_pair(S("2"), S("X"), bound=2, T=6)


@given(st.integers(1, 3), st.integers(-2, 2), st.integers(1, 3))
@settings(max_examples=15, deadline=None)
def test_deg0_witnesses_commute_for_random_lower_terms(k, c, p):
    u = TruncatedSeries(ring_A(), {0: H**p, -k: RatFunc.const(c or 1) * H})
    w = centralize_deg0(u, H + c, 6)
    assert w.commutes_to_window
    assert w.element.coeff(0) == H + c
