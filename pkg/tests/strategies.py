"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from ncalg.field import RatFunc
from ncalg.weyl import WEYL, WeylLikeElement, basis_up_to

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(variables, max_terms=3, max_power=2):
    term = st.tuples(small_rationals, st.lists(st.integers(0, max_power), min_size=len(variables),
                                               max_size=len(variables)))

    def build(terms):
        out = RatFunc.const(0)
        for c, powers in terms:
            t = RatFunc.const(c)
            for v, p in zip(variables, powers):
                t = t * RatFunc.var(v) ** p
            out = out + t
        return out

    return st.lists(term, max_size=max_terms).map(build)


def ratfuncs(variables=("H",)):
    def build(pair):
        num, den = pair
        return num / den if not den.is_zero else num

    return st.tuples(polys(variables), polys(variables)).map(build)


def nonzero_ratfuncs(variables=("H",)):
    return ratfuncs(variables).filter(lambda f: not f.is_zero)


def weyl_elements(max_degree=3, pres=WEYL):
    monos = basis_up_to(max_degree, pres)
    return st.dictionaries(st.sampled_from(monos), small_rationals, max_size=6).map(
        lambda d: WeylLikeElement(pres, d))
