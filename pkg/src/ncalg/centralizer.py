"""Centralizers in skew Laurent series and pseudo-differential rings.

Two constructions are provided.  For an element ``u`` of degree 0 whose
leading coefficient is moved by the twist, every coefficient of a commuting
series is forced by a triangular system once the constant term is chosen.
For ``u`` of nonzero degree the commuting series of a prescribed degree are
found order by order, each order being a linear problem over Q for the
unknown coefficient written in a bounded ansatz (Laurent polynomials in the
twisted indeterminate, optionally times powers of C).

The checks at the end test centralizer identities on concrete inputs, either
exactly (presented algebras) or within a series window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .classify import CentralElementError, kernel_chain, same_span
from .field import RatFunc, _RING, _frac, apply_endo, is_fixed
from .linalg import canonical_span, nullspace, rref
from .series import (
    RingTag,
    TruncatedSeries,
    WindowExhausted,
    series_degree,
    series_inv,
    series_mul,
)
from .weyl import WeylLikeElement, basis_up_to, commutator as weyl_commutator

Element = Union[TruncatedSeries, WeylLikeElement]


class PreconditionError(ValueError):
    """An input violates the hypotheses the computation relies on."""


class DegenerateDegreeZeroError(PreconditionError):
    """Degree-0 input with a twist-fixed leading coefficient and lower terms."""


class Construction(enum.Enum):
    TRIANGULAR_SOLVE = "TriangularSolve"
    LEADING_TERM_MATCH = "LeadingTermMatch"
    GIVEN = "Given"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CentralizerWitness:
    element: TruncatedSeries
    commutes_to_window: bool
    construction: Construction


@dataclass(frozen=True)
class Obstruction:
    """The first order whose linear equation has no solution in the ansatz."""

    order: int
    exponent: int
    residual: RatFunc

    def __str__(self):
        return f"order {self.order} (exponent {self.exponent}): residual {self.residual}"


@dataclass(frozen=True)
class PosdegResult:
    witness: CentralizerWitness | None
    obstruction: Obstruction | None


def _commutator(a: TruncatedSeries, b: TruncatedSeries, window: int) -> TruncatedSeries:
    return series_mul(a, b, window) - series_mul(b, a, window)


def _commutes_within(a: TruncatedSeries, b: TruncatedSeries, window: int) -> bool:
    return _commutator(a, b, window).truncate(window).is_zero_within_window


# -- degree 0: the triangular system --------------------------------------


def _check_degree0(u: TruncatedSeries) -> RatFunc:
    try:
        deg = series_degree(u)
    except WindowExhausted as exc:
        raise PreconditionError("u is zero within its window") from exc
    if deg != 0:
        raise PreconditionError(f"centralize_deg0 needs series degree 0, got {deg}")
    u0 = u.coeffs[0]
    lower = [e for e in u.coeffs if e < 0]
    if u.is_exact and not lower:
        raise PreconditionError("u lies in the coefficient field; its centralizer is the whole field (case 1)")
    if is_fixed(u.ring.twist, u0):
        raise DegenerateDegreeZeroError(
            "leading coefficient of u is fixed by the twist while u has lower-order terms; "
            "this degree-0 case is not covered and is refused")
    return u0


def centralize_deg0(u: TruncatedSeries, a0, T: int) -> CentralizerWitness:
    """The series ``c`` of degree <= 0 with constant term ``a0`` commuting with ``u``.

    The coefficient of ``g^(-s)`` in ``c`` is solved from the lowest new
    exponent of ``[c, u]``: ``(sigma^(-s)(u0) - u0) c_(-s) + known = 0`` at
    exponent ``-s`` (skew) or ``-s delta(u0) c_(-s) + known = 0`` at
    exponent ``-s-1`` (pseudo-differential).
    """
    if T < 1:
        raise ValueError("window must be positive")
    u0 = _check_degree0(u)
    ring = u.ring
    a0 = RatFunc.coerce(a0)
    skew = ring.kind == "skew"
    mul_window = T + 2
    coeffs = {0: a0}
    for s in range(1, T):
        partial = TruncatedSeries(ring, coeffs)
        com = _commutator(partial, u, mul_window)
        e = -s if skew else -s - 1
        known = com.coeff(e)
        if skew:
            factor = apply_endo(ring.twist, u0, -s) - u0
        else:
            factor = apply_endo(ring.twist, u0, 1) * (-s)
        value = -known / factor
        if not value.is_zero:
            coeffs[-s] = value
    c = TruncatedSeries(ring, coeffs, -T + 1)
    ok = _commutes_within(c, u, mul_window)
    return CentralizerWitness(c, ok, Construction.TRIANGULAR_SOLVE)


# -- linear equations over Q from rational-function identities -------------


def _q_rows(columns: Sequence[RatFunc], rhs: RatFunc | None = None) -> list[list[Fraction]]:
    """Rows over Q equivalent to ``sum y_i columns_i = rhs`` (rhs appended last)."""
    items = list(columns) + ([rhs] if rhs is not None else [])
    den = _RING.one
    for f in items:
        if not f.is_zero:
            den = den.lcm(f.den)
    monos: dict = {}
    scaled = []
    for f in items:
        poly = f.num * den.exquo(f.den) if not f.is_zero else _RING.zero
        table = dict(poly.terms())
        for m in table:
            monos.setdefault(m, len(monos))
        scaled.append(table)
    rows = [[Fraction(0)] * len(items) for _ in monos]
    for j, table in enumerate(scaled):
        for m, c in table.items():
            rows[monos[m]][j] = _frac(c)
    return rows


def ansatz_basis(ring: RingTag, B: int, c_powers: int = 1) -> list[RatFunc]:
    """Monomials ``var^k * C^c`` with ``|k| <= B`` (``c <= c_powers`` when C is present).

    Ordered by ``(c, |k|, -k)`` so simpler coefficients come first.
    """
    var = RatFunc.var(ring.coeff_variable)
    ks = sorted(range(-B, B + 1), key=lambda k: (abs(k), -k))
    cs = range(c_powers + 1) if "C" in ring.coeff_symbols else range(1)
    Cv = RatFunc.var("C")
    return [var**k * Cv**c for c in cs for k in ks]


def _solve_particular(rows: list[list[Fraction]], nvars: int) -> list[Fraction] | None:
    """A solution of the augmented system with every free variable set to zero."""
    red, pivots = rref(rows, nvars + 1)
    if nvars in pivots:
        return None
    sol = [Fraction(0)] * nvars
    for row, pc in zip(red, pivots):
        sol[pc] = row[nvars]
    return sol


# -- nonzero degree: order-by-order matching ------------------------------


def centralize_posdeg_report(u: TruncatedSeries, target_deg: int, T: int, B: int = 3) -> PosdegResult:
    """Commuting series of degree ``target_deg`` with ``T`` coefficients, or an obstruction.

    The leading coefficient is the first vector of the canonical kernel basis
    of the top-order equation (so its first nonzero ansatz coordinate is 1).
    Every later coefficient is the particular solution with all free ansatz
    coordinates set to zero.
    """
    try:
        n = series_degree(u)
    except WindowExhausted as exc:
        raise PreconditionError("u is zero within its window") from exc
    if n == 0 or n == float("-inf"):
        raise PreconditionError("centralize_posdeg needs a nonzero series degree")
    ring = u.ring
    offset = 0 if ring.kind == "skew" else 1
    basis = ansatz_basis(ring, B)
    mul_window = T + 3
    d = target_deg
    coeffs: dict = {}
    for s in range(T):
        e = n + d - s - offset
        exp = d - s
        cols = [_commutator(u, TruncatedSeries.monomial(ring, exp, f), mul_window).coeff(e) for f in basis]
        known = _commutator(u, TruncatedSeries(ring, coeffs), mul_window).coeff(e) if coeffs else RatFunc.const(0)
        if s == 0:
            kernel = nullspace(_q_rows(cols), len(basis))
            if not kernel:
                return PosdegResult(None, Obstruction(0, e, RatFunc.const(0)))
            y = kernel[0]
        else:
            y = _solve_particular(_q_rows(cols, -known), len(basis))
            if y is None:
                return PosdegResult(None, Obstruction(s, e, known))
        value = RatFunc.const(0)
        for coef, f in zip(y, basis):
            if coef:
                value = value + f * coef
        if not value.is_zero:
            coeffs[exp] = value
    b = TruncatedSeries(ring, coeffs, d - T + 1)
    ok = _commutes_within(u, b, mul_window)
    return PosdegResult(CentralizerWitness(b, ok, Construction.LEADING_TERM_MATCH), None)


def centralize_posdeg(u: TruncatedSeries, target_deg: int, T: int, B: int = 3) -> CentralizerWitness | None:
    return centralize_posdeg_report(u, target_deg, T, B).witness


def posdeg_obstruction(u: TruncatedSeries, target_deg: int, T: int, B: int = 3) -> Obstruction | None:
    return centralize_posdeg_report(u, target_deg, T, B).obstruction


# -- bounded commutants and the centre ------------------------------------


@dataclass
class BoundedCommutant:
    """Exact Laurent polynomials (ansatz coefficients) commuting with the targets on the known window."""

    ring: RingTag
    exponents: list[int]
    basis_functions: list[RatFunc]
    vectors: list[list[Fraction]]

    def elements(self) -> list[TruncatedSeries]:
        out = []
        k = len(self.basis_functions)
        for v in self.vectors:
            coeffs: dict = {}
            for idx, e in enumerate(self.exponents):
                val = RatFunc.const(0)
                for coef, f in zip(v[idx * k:(idx + 1) * k], self.basis_functions):
                    if coef:
                        val = val + f * coef
                if not val.is_zero:
                    coeffs[e] = val
            out.append(TruncatedSeries(self.ring, coeffs))
        return out

    def span_key(self):
        n = len(self.exponents) * len(self.basis_functions)
        return canonical_span(self.vectors, n) if self.vectors else []

    @property
    def dim(self) -> int:
        return len(self.vectors)


def bounded_commutant(targets: Sequence[TruncatedSeries], exponents: Sequence[int], B: int = 2,
                      window: int = 8, c_powers: int = 1) -> BoundedCommutant:
    """All ansatz Laurent polynomials on ``exponents`` commuting with every target within the window."""
    if not targets:
        raise ValueError("need at least one target")
    ring = targets[0].ring
    funcs = ansatz_basis(ring, B, c_powers)
    exps = sorted(set(exponents), reverse=True)
    unknowns = [TruncatedSeries.monomial(ring, e, f) for e in exps for f in funcs]
    rows: list[list[Fraction]] = []
    for a in targets:
        coms = [_commutator(a, z, window + max(exps) - min(exps) + 2) for z in unknowns]
        lows = [c.low for c in coms if c.low is not None]
        floor = max(lows) if lows else None
        known = set()
        for c in coms:
            known.update(c.coeffs)
        if floor is not None:
            known = {e for e in known if e >= floor}
        for e in sorted(known, reverse=True):
            rows.extend(_q_rows([c.coeffs.get(e, RatFunc.const(0)) for c in coms]))
    vectors = nullspace(rows, len(unknowns)) if rows else [
        [Fraction(int(i == j)) for i in range(len(unknowns))] for j in range(len(unknowns))]
    return BoundedCommutant(ring, exps, funcs, vectors)


@dataclass
class CentreSlice:
    degree: int
    basis: list[RatFunc]
    field: str

    @property
    def dim(self) -> int:
        return len(self.basis)


def _field_label(basis: list[RatFunc]) -> str:
    if not basis:
        return "0"
    vs = set()
    for f in basis:
        vs |= f.variables
    if not vs:
        return "K"
    if vs == {"C"}:
        return "K(C)"
    return "K(" + ",".join(sorted(vs)) + ")"


def centre_probe(ring: RingTag, deg_range: Sequence[int], T: int = 8, B: int = 2) -> list[CentreSlice]:
    """Leading coefficients of elements commuting with the generator and the twisted indeterminate.

    For each degree ``d`` the unknown is an ansatz Laurent polynomial on the
    exponents ``d, d-1, ..., d-T+1``; the returned basis spans the degree-``d``
    coefficients of the solutions.
    """
    lo, hi = min(deg_range), max(deg_range)
    g = TruncatedSeries.gen(ring)
    var = TruncatedSeries.scalar(ring, RatFunc.var(ring.coeff_variable))
    out = []
    for d in range(lo, hi + 1):
        com = bounded_commutant([g, var], range(d - T + 1, d + 1), B, T)
        k = len(com.basis_functions)
        tops = [v[:k] for v in com.vectors if any(v[:k])]
        tops = [list(r) for r in canonical_span(tops, k)] if tops else []
        basis = []
        for v in tops:
            val = RatFunc.const(0)
            for coef, f in zip(v, com.basis_functions):
                if coef:
                    val = val + f * coef
            basis.append(val)
        out.append(CentreSlice(d, basis, _field_label(basis)))
    return out


def centre_summary(slices: Sequence[CentreSlice]) -> dict[int, str]:
    """Degrees with a nonzero slice, mapped to the field label of that slice."""
    return {s.degree: s.field for s in slices if s.dim}


# -- identity checks -------------------------------------------------------


def _as_series(ring: RingTag, value) -> TruncatedSeries:
    if isinstance(value, CentralizerWitness):
        return value.element
    if isinstance(value, TruncatedSeries):
        return value
    return TruncatedSeries.scalar(ring, value)


def verify_eigenspace_factorization(a: TruncatedSeries, p: TruncatedSeries, lam, sample_c, T: int = 8,
                                    sample_q=None) -> bool:
    """Check that ``c p`` is a ``lam``-eigenvector of ``ad a`` and ``q p^-1`` commutes with ``a``.

    ``sample_q`` defaults to the products ``c p`` themselves.
    """
    ring = a.ring
    lam = RatFunc.coerce(lam)
    if lam.is_zero:
        raise PreconditionError("lambda must be nonzero")
    if p.is_exact_zero:
        raise PreconditionError("p must be invertible")
    lam_s = TruncatedSeries.scalar(ring, lam)
    if not (_commutator(a, p, T) - series_mul(lam_s, p, T)).truncate(T).is_zero_within_window:
        raise PreconditionError("[a, p] = lambda p fails within the window")
    p_inv = series_inv(p, T)
    cs = [_as_series(ring, c) for c in sample_c]
    ok = True
    products = []
    for c in cs:
        cp = series_mul(c, p, T)
        products.append(cp)
        diff = _commutator(a, cp, T) - series_mul(lam_s, cp, T)
        ok &= diff.truncate(T).is_zero_within_window
    qs = [_as_series(ring, q) for q in sample_q] if sample_q is not None else products
    for q in qs:
        ok &= _commutes_within(a, series_mul(q, p_inv, T), T)
    return bool(ok)


@dataclass
class CccReport:
    pair: tuple
    commuting: bool
    bounded_centralizers_equal: bool
    intersection_trivial: bool
    centralizers_commutative: bool
    details: str = ""
    dims: tuple[int, int, int] = (0, 0, 0)

    @property
    def consistent(self) -> bool:
        """Commuting pairs share their centralizer; other pairs share only scalars."""
        if self.commuting:
            return self.bounded_centralizers_equal and self.centralizers_commutative
        return self.intersection_trivial and self.centralizers_commutative


def _weyl_centralizer(a: WeylLikeElement, bound: int) -> list[WeylLikeElement]:
    pres = a.presentation
    monos = basis_up_to(bound, pres)
    vecs = kernel_chain(lambda b: weyl_commutator(a, b), bound, pres, 1)[0]
    rows = canonical_span(vecs, len(monos)) if vecs else []
    return [WeylLikeElement(pres, {m: c for m, c in zip(monos, r) if c}) for r in rows]


def _pairwise_commute(elements, commute) -> bool:
    return all(commute(x, y) for i, x in enumerate(elements) for y in elements[i + 1:])


def check_ccc_pair(a: Element, b: Element, bound: int = 6, T: int = 8, B: int = 2) -> CccReport:
    """Bounded form of: ``ab = ba`` iff ``C(a) = C(b)``, otherwise ``C(a) & C(b)`` is the centre."""
    if isinstance(a, WeylLikeElement):
        return _ccc_weyl(a, b, bound)
    return _ccc_series(a, b, bound, T, B)


def _ccc_weyl(a: WeylLikeElement, b: WeylLikeElement, bound: int) -> CccReport:
    pres = a.presentation
    gens = [WeylLikeElement.gen(g, pres) for g in pres.generators]
    for z in (a, b):
        if all(weyl_commutator(z, g).is_zero for g in gens):
            raise CentralElementError(f"{z} is central")
    ca, cb = _weyl_centralizer(a, bound), _weyl_centralizer(b, bound)
    commuting = weyl_commutator(a, b).is_zero
    equal = same_span(ca, cb)
    monos = basis_up_to(bound, pres)
    index = {m: k for k, m in enumerate(monos)}

    def vec(z):
        v = [Fraction(0)] * len(monos)
        for m, c in z.coeffs.items():
            v[index[m]] = c
        return v

    dim_sum = len(canonical_span([vec(z) for z in ca + cb], len(monos)))
    inter = len(ca) + len(cb) - dim_sum
    trivial = inter == 1  # scalars always lie in both centralizers
    comm = _pairwise_commute(ca, lambda x, y: weyl_commutator(x, y).is_zero) and \
        _pairwise_commute(cb, lambda x, y: weyl_commutator(x, y).is_zero)
    details = f"dim C(a)={len(ca)}, dim C(b)={len(cb)}, dim intersection={inter} at bound {bound}"
    return CccReport((a, b), commuting, equal, trivial, comm, details, (len(ca), len(cb), inter))


def _ccc_series(a: TruncatedSeries, b: TruncatedSeries, bound: int, T: int, B: int) -> CccReport:
    ring = a.ring
    g = TruncatedSeries.gen(ring)
    var = TruncatedSeries.scalar(ring, RatFunc.var(ring.coeff_variable))
    for z in (a, b):
        if _commutes_within(z, g, T) and _commutes_within(z, var, T):
            raise CentralElementError(f"{z} is central within the window")
    exps = range(-bound, bound + 1)
    ca = bounded_commutant([a], exps, B, T)
    cb = bounded_commutant([b], exps, B, T)
    both = bounded_commutant([a, b], exps, B, T)
    centre = bounded_commutant([g, var], exps, B, T)
    commuting = _commutes_within(a, b, T)
    equal = ca.span_key() == cb.span_key()
    trivial = both.span_key() == centre.span_key()
    comm = all(_pairwise_commute(c.elements(), lambda x, y: _commutes_within(x, y, T)) for c in (ca, cb))
    details = (f"dim C(a)={ca.dim}, dim C(b)={cb.dim}, dim intersection={both.dim}, "
               f"centre dim={centre.dim} on exponents [{-bound}, {bound}], ansatz bound {B}")
    return CccReport((a, b), commuting, equal, trivial, comm, details, (ca.dim, cb.dim, both.dim))


def _is_central(z: Element, T: int) -> bool:
    if isinstance(z, WeylLikeElement):
        pres = z.presentation
        return all(weyl_commutator(z, WeylLikeElement.gen(g, pres)).is_zero for g in pres.generators)
    ring = z.ring
    g = TruncatedSeries.gen(ring)
    var = TruncatedSeries.scalar(ring, RatFunc.var(ring.coeff_variable))
    return _commutes_within(z, g, T) and _commutes_within(z, var, T)


def verify_semisimple_uniqueness(a: Element, b: Element, p: Element, lam, mu, T: int = 8) -> bool:
    """For commuting ``a, b`` sharing the eigenvector ``p``: is ``mu a - lam b`` central?"""
    if isinstance(a, WeylLikeElement):
        lam, mu = Fraction(lam), Fraction(mu)
        if lam == 0 or mu == 0:
            raise PreconditionError("eigenvalues must be nonzero")
        if not weyl_commutator(a, b).is_zero:
            raise PreconditionError("a and b must commute")
        if weyl_commutator(a, p) != p * lam or weyl_commutator(b, p) != p * mu:
            raise PreconditionError("p is not an eigenvector with the given eigenvalues")
        return _is_central(a * mu - b * lam, T)
    ring = a.ring
    lam_r, mu_r = RatFunc.coerce(lam), RatFunc.coerce(mu)
    if lam_r.is_zero or mu_r.is_zero:
        raise PreconditionError("eigenvalues must be nonzero")
    if not _commutes_within(a, b, T):
        raise PreconditionError("a and b must commute within the window")
    for z, ev in ((a, lam_r), (b, mu_r)):
        diff = _commutator(z, p, T) - series_mul(TruncatedSeries.scalar(ring, ev), p, T)
        if not diff.truncate(T).is_zero_within_window:
            raise PreconditionError("p is not an eigenvector with the given eigenvalues")
    combo = series_mul(TruncatedSeries.scalar(ring, mu_r), a, T) - series_mul(TruncatedSeries.scalar(ring, lam_r), b, T)
    return _is_central(combo, T)
