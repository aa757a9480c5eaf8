import random
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncalg.classify import (
    CentralElementError, DixmierClass, TableViolation, classify, comfab_terms, dp6_table_check,
    eigen_search, nil_space, no_nonzero_eigenvalue_check, no_nonzero_eigenvalue_report,
    rational_roots_and_factors, same_span, torsion_component, verify_comfab, verify_degree_chain,
    verify_shared_nil,
)
from ncalg.parser import parse_element, parse_poly
from ncalg.weyl import (
    WeylLikeElement, basis_up_to, bernstein_degree, commutator, eval_poly, quantum_plane,
)
from oracles import oracle_classify, oracle_commutator, oracle_eigen, oracle_nil_dims, random_weyl
from strategies import weyl_elements


def W(text):
    return parse_element(text, "weyl")


def mono(i, j):
    return WeylLikeElement.monomial(i, j, 1)


# -- nil spaces ------------------------------------------------------------


def test_centralizer_of_x_is_polynomials_in_x():
    assert same_span(nil_space(W("x"), 0, 3), [mono(k, 0) for k in range(4)])


def test_x_plus_d_is_locally_nilpotent_on_the_bound():
    assert len(nil_space(W("x + d"), 3, 3)) == len(basis_up_to(3)) == 10


@pytest.mark.parametrize("text", ["x", "x*d", "x^2*d", "x + d^2", "(x*d)^2 - x"])
def test_nil_spaces_match_direct_powering(text):
    a = W(text)
    dims = [len(nil_space(a, n, 3)) for n in range(4)]
    assert dims == oracle_nil_dims(a, 3, 3)
    assert dims == sorted(dims)


def test_nil_spaces_grow_with_the_bound():
    a = W("x^2*d")
    assert all(len(nil_space(a, 1, N)) <= len(nil_space(a, 1, N + 1)) for N in range(1, 4))


def test_torsion_component_at_zero_is_nil_space():
    a = W("x^2*d + x")
    for n in range(3):
        assert same_span(torsion_component(a, 0, n, 3), nil_space(a, n, 3))


def test_central_input_is_refused():
    with pytest.raises(CentralElementError):
        nil_space(W("5"), 0, 3)
    with pytest.raises(CentralElementError):
        classify(W("0"), 3)


# -- eigenvectors ----------------------------------------------------------


def test_eigenvectors_of_euler_operator_are_monomials():
    res = eigen_search(W("x*d"), 4)
    found = {}
    for lam, b in res.pairs:
        found.setdefault(lam, []).append(b)
    for lam in range(-4, 5):
        expected = [mono(i, j) for i, j in basis_up_to(4) if i - j == lam]
        assert same_span(found[Fraction(lam)], expected)
    for lam, b in res.pairs:
        assert oracle_commutator(W("x*d"), b) == b * lam


@pytest.mark.parametrize("text,N", [("x", 4), ("(x*d)^2", 6)])
def test_only_zero_eigenvalue(text, N):
    assert eigen_search(W(text), N).eigenvalues == [0]


@given(weyl_elements(2).filter(lambda a: any(i + j > 0 for i, j in a.coeffs)))
@settings(max_examples=20, deadline=None)
def test_eigenvalues_match_brute_force(a):
    res = eigen_search(a, 3)
    spaces, _, _ = oracle_eigen(a, 3)
    assert set(res.eigenvalues) == set(spaces)
    for lam, b in res.pairs:
        assert commutator(a, b) == b * lam


def test_grading_and_monoid_closure():
    a = W("x*d + x")
    res = eigen_search(a, 4)
    values = set(res.eigenvalues)
    for lam, b in res.pairs:
        for mu, c in res.pairs:
            prod = b * c
            if prod.is_zero:
                continue
            assert commutator(a, prod) == prod * (lam + mu)
            if bernstein_degree(prod) <= 4:
                assert lam + mu in values


def test_product_rule_for_torsion_components():
    a = W("x*d")
    x, d = W("x"), W("d")
    assert same_span(torsion_component(a, 1, 0, 1), [x])
    for b, lam in ((x, 1), (d, -1), (x * d, 0)):
        assert commutator(a, b) == b * lam
    # F(a, 1, 0) F(a, -1, 0) lands in F(a, 0, 0)
    for b in torsion_component(a, 1, 0, 2):
        for c in torsion_component(a, -1, 0, 2):
            assert commutator(a, b * c).is_zero


def test_rational_roots_and_factors():
    # (t - 1)(t + 1/2)(t^2 + 1)
    roots, factors = rational_roots_and_factors([Fraction(-1, 2), Fraction(-1, 2), Fraction(1, 2),
                                                 Fraction(-1, 2), Fraction(1)])
    assert sorted(roots) == [Fraction(-1, 2), 1]
    assert len(factors) == 1


# -- classification --------------------------------------------------------


@pytest.mark.parametrize("text,N,expected", [
    ("x", 6, DixmierClass.D1),
    ("x*d", 6, DixmierClass.D3),
    ("(x*d)^2", 8, DixmierClass.D5),
    ("x + d", 6, DixmierClass.D1),
    ("x^2*d", 4, DixmierClass.D2),
])
def test_classification_examples(text, N, expected):
    r = classify(W(text), N)
    assert r.dclass is expected
    assert any("evidence" in c for c in r.caveats)
    assert r.nil_profile == sorted(r.nil_profile)


def test_euler_operator_witnesses():
    r = classify(W("x*d"), 6)
    lams = {lam for lam, _ in r.eigen_witnesses}
    assert {1, -1} <= lams
    for lam, b in r.eigen_witnesses:
        assert commutator(W("x*d"), b) == b * lam


def test_verdicts_are_within_the_first_five():
    rng = random.Random(11)
    allowed = {DixmierClass.D1, DixmierClass.D2, DixmierClass.D3, DixmierClass.D4, DixmierClass.D5,
               DixmierClass.UNKNOWN}
    for _ in range(10):
        a = random_weyl(rng, 2, min_degree=1)
        r = classify(a, 3)
        assert r.dclass in allowed
        assert r.dclass.value == oracle_classify(a, 3)


def test_mutual_exclusion_on_random_elements():
    rng = random.Random(5)
    for _ in range(15):
        a = random_weyl(rng, 2, min_degree=1)
        r = classify(a, 3)
        if r.eigen_witnesses:
            assert r.nil_profile[1] == r.centralizer_dim
            for lam in {lam for lam, _ in r.eigen_witnesses}:
                assert same_span(torsion_component(a, lam, 1, 3), torsion_component(a, lam, 0, 3))


def test_quantum_plane_uses_same_machinery():
    pres = quantum_plane(Fraction(2))
    a = parse_element("x*y", "qplane", Fraction(2))
    r = classify(a, 3)
    assert r.dclass in set(DixmierClass)
    assert all(b.presentation == pres for _, b in r.eigen_witnesses)


def test_class_labels():
    assert str(DixmierClass.D3) == "Δ3"
    assert str(DixmierClass.UNKNOWN) == "Unknown"
    assert DixmierClass.D1.description


# -- identity checks -------------------------------------------------------


def test_comfab_worked_example():
    a, b, f = W("x"), W("d"), parse_poly("t^2")
    assert commutator(eval_poly(f, a), b) == W("-2*x")
    assert verify_comfab(a, b, f)


def test_comfab_linear_polynomial():
    a, b = W("x*d"), W("x^2")
    terms = comfab_terms(a, b, parse_poly("t"))
    assert terms == [commutator(a, b)]


@given(weyl_elements(3), weyl_elements(3), st.lists(st.integers(-3, 3), min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_comfab_random(a, b, coeffs):
    from ncalg.weyl import Polynomial1V

    assert verify_comfab(a, b, Polynomial1V(tuple(Fraction(c) for c in coeffs)))


@pytest.mark.parametrize("a,b,f", [("x^2", "d^2", "t^2"), ("x*d", "x", "t^3"), ("x", "d", "t^2")])
def test_degree_chain_examples(a, b, f):
    assert verify_degree_chain(W(a), W(b), parse_poly(f))


def test_degree_chain_preconditions():
    with pytest.raises(ValueError):
        verify_degree_chain(W("2"), W("x"), parse_poly("t^2"))
    with pytest.raises(ValueError):
        verify_degree_chain(W("x"), W("d"), parse_poly("t + 1"))


@pytest.mark.parametrize("a,f", [("x*d", "t^2"), ("x", "t^2"), ("d", "t^3")])
def test_no_nonzero_eigenvalue(a, f):
    assert no_nonzero_eigenvalue_check(W(a), parse_poly(f), 6)
    report = no_nonzero_eigenvalue_report(W(a), parse_poly(f), 6)
    assert set(report.eigenvalues) <= {0}


@pytest.mark.parametrize("a,b", [("x", "x^2 + x"), ("x*d", "x*d"), ("x*d", "(x*d)^2 + x*d")])
def test_shared_nil_spaces(a, b):
    assert verify_shared_nil(W(a), W(b), 3)


def test_shared_nil_needs_commuting_pair():
    with pytest.raises(ValueError):
        verify_shared_nil(W("x"), W("d"), 3)


@pytest.mark.parametrize("a,f,expected", [
    ("x", "t^2", (DixmierClass.D1, DixmierClass.D1)),
    ("x*d", "t^2", (DixmierClass.D3, DixmierClass.D5)),
    ("(x*d)^2", "t^2", (DixmierClass.D5, DixmierClass.D5)),
])
def test_dp6_table(a, f, expected):
    assert dp6_table_check(W(a), parse_poly(f), 4) == expected


def test_dp6_table_skips_unknown(monkeypatch):
    module = sys.modules["ncalg.classify"]

    real = module.classify

    def fake(a, N, n_max=None):
        r = real(a, N, n_max)
        r.dclass = DixmierClass.UNKNOWN
        return r

    monkeypatch.setattr(module, "classify", fake)
    notes = []
    assert dp6_table_check(W("x"), parse_poly("t^2"), 3, notes) == (DixmierClass.UNKNOWN,) * 2
    assert notes


def test_dp6_table_violation_is_raised(monkeypatch):
    module = sys.modules["ncalg.classify"]

    real = module.classify
    calls = []

    def fake(a, N, n_max=None):
        r = real(a, N, n_max)
        calls.append(r)
        if len(calls) == 2:
            r.dclass = DixmierClass.D3
        return r

    monkeypatch.setattr(module, "classify", fake)
    with pytest.raises(TableViolation):
        dp6_table_check(W("x"), parse_poly("t^2"), 3)
