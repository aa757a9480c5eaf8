"""Normal-form arithmetic in A1, the quantum plane and the quantum Weyl algebra.

All three algebras have the monomial basis ``x^i g^j`` where ``g`` is the
second generator (``d`` for the Weyl-type algebras, ``y`` for the quantum
plane).  Elements are finite tables ``(i, j) -> Fraction``, all x's to the
left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

import sympy

NEG_INF = float("-inf")


@dataclass(frozen=True)
class AlgebraPresentation:
    """``kind`` is ``"weyl"``, ``"qplane"`` (xy = lam*yx) or ``"qweyl"`` (dx - mu*xd = 1)."""

    kind: str
    param: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("weyl", "qplane", "qweyl"):
            raise ValueError(f"unknown presentation {self.kind!r}")
        if self.kind == "weyl":
            if self.param is not None:
                raise ValueError("the Weyl algebra takes no parameter")
            return
        if self.param is None:
            raise ValueError(f"{self.kind} needs a parameter")
        p = Fraction(self.param)
        if p in (0, 1, -1):
            raise ValueError(f"quantum parameter must avoid 0 and +-1, got {p}")
        object.__setattr__(self, "param", p)

    @property
    def generators(self) -> tuple[str, str]:
        return ("x", "y") if self.kind == "qplane" else ("x", "d")

    def __str__(self):
        if self.kind == "weyl":
            return "weyl"
        return f"{self.kind}({self.param})"


WEYL = AlgebraPresentation("weyl")


def quantum_plane(lam) -> AlgebraPresentation:
    return AlgebraPresentation("qplane", Fraction(lam))


def quantum_weyl(mu) -> AlgebraPresentation:
    return AlgebraPresentation("qweyl", Fraction(mu))


@lru_cache(maxsize=None)
def _reorder(pres: AlgebraPresentation, m: int, n: int) -> tuple:
    """Normal form of ``g^m x^n`` as a tuple of ((i, j), coeff)."""
    if m == 0 or n == 0:
        return (((n, m), Fraction(1)),)
    if pres.kind == "weyl":
        # d^m x^n = sum_k C(m,k) C(n,k) k! x^(n-k) d^(m-k)
        return tuple(
            ((n - k, m - k), Fraction(comb(m, k) * comb(n, k) * factorial(k)))
            for k in range(min(m, n) + 1)
        )
    if pres.kind == "qplane":
        # y x = lam^-1 x y
        return (((n, m), pres.param ** (-m * n)),)
    # quantum Weyl: d x^n = mu^n x^n d + [n]_mu x^(n-1)
    mu = pres.param
    qint = sum(mu**k for k in range(n))
    out: dict = {}
    for (i, j), c in _reorder(pres, m - 1, n):
        key = (i, j + 1)
        out[key] = out.get(key, 0) + c * mu**n
    for (i, j), c in _reorder(pres, m - 1, n - 1):
        out[(i, j)] = out.get((i, j), 0) + c * qint
    return tuple((k, v) for k, v in out.items() if v != 0)


class WeylLikeElement:
    """Element of one of the presented algebras, as a table (i, j) -> Fraction."""

    __slots__ = ("presentation", "coeffs", "_hash")

    def __init__(self, presentation: AlgebraPresentation, coeffs: Mapping | None = None):
        self.presentation = presentation
        clean = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v != 0:
                clean[(int(k[0]), int(k[1]))] = v
        self.coeffs = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, pres: AlgebraPresentation = WEYL) -> "WeylLikeElement":
        return cls(pres, {})

    @classmethod
    def scalar(cls, value, pres: AlgebraPresentation = WEYL) -> "WeylLikeElement":
        return cls(pres, {(0, 0): value})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, pres: AlgebraPresentation = WEYL) -> "WeylLikeElement":
        return cls(pres, {(i, j): coeff})

    @classmethod
    def gen(cls, name: str, pres: AlgebraPresentation = WEYL) -> "WeylLikeElement":
        first, second = pres.generators
        if name == first:
            return cls.monomial(1, 0, pres=pres)
        if name == second:
            return cls.monomial(0, 1, pres=pres)
        raise ValueError(f"{name!r} is not a generator of {pres}")

    def _like(self, coeffs) -> "WeylLikeElement":
        return WeylLikeElement(self.presentation, coeffs)

    # -- queries ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_scalar(self) -> bool:
        return all(k == (0, 0) for k in self.coeffs)

    def scalar_value(self) -> Fraction:
        if not self.is_scalar:
            raise ValueError("element is not a scalar")
        return self.coeffs.get((0, 0), Fraction(0))

    def degree(self):
        return bernstein_degree(self)

    # -- arithmetic -------------------------------------------------------
    def _same(self, other: "WeylLikeElement") -> None:
        if other.presentation != self.presentation:
            raise ValueError(f"mixed presentations: {self.presentation} and {other.presentation}")

    def _coerce(self, other):
        if isinstance(other, WeylLikeElement):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return WeylLikeElement.scalar(other, self.presentation)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like({k: v * other for k, v in self.coeffs.items()})
        if not isinstance(other, WeylLikeElement):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in this algebra")
        out = WeylLikeElement.scalar(1, self.presentation)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylLikeElement.scalar(other, self.presentation)
        if not isinstance(other, WeylLikeElement):
            return NotImplemented
        return self.presentation == other.presentation and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.presentation, frozenset(self.coeffs.items())))
        return self._hash

    def terms(self):
        """Terms sorted by descending Bernstein degree, then descending x-power."""
        return sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __repr__(self):
        return f"WeylLikeElement({self.presentation}, {self})"

    def __str__(self):
        from .parser import format_weyl

        return format_weyl(self)


def mul(a: WeylLikeElement, b: WeylLikeElement) -> WeylLikeElement:
    """Product in normal form."""
    a._same(b)
    pres = a.presentation
    out: dict = {}
    for (i1, j1), c1 in a.coeffs.items():
        for (i2, j2), c2 in b.coeffs.items():
            c = c1 * c2
            for (i, j), r in _reorder(pres, j1, i2):
                key = (i1 + i, j + j2)
                out[key] = out.get(key, 0) + c * r
    return WeylLikeElement(pres, out)


def commutator(a: WeylLikeElement, b: WeylLikeElement) -> WeylLikeElement:
    return mul(a, b) - mul(b, a)


def ad_power(a: WeylLikeElement, b: WeylLikeElement, k: int) -> WeylLikeElement:
    if k < 0:
        raise ValueError("ad power must be non-negative")
    for _ in range(k):
        if b.is_zero:
            break
        b = commutator(a, b)
    return b


def bernstein_degree(a: WeylLikeElement):
    """Total degree ``max(i + j)``; ``-inf`` for zero."""
    if a.is_zero:
        return NEG_INF
    return max(i + j for i, j in a.coeffs)


XBAR, DBAR = sympy.symbols("xbar dbar")


def leading_form(a: WeylLikeElement) -> sympy.Poly:
    """Top Bernstein-degree part as a commutative polynomial in xbar, dbar."""
    if a.presentation.kind != "weyl":
        raise ValueError("leading forms are defined for the Weyl algebra")
    if a.is_zero:
        raise ValueError("leading form of zero is undefined")
    top = bernstein_degree(a)
    terms = {(i, j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in a.coeffs.items() if i + j == top}
    return sympy.Poly.from_dict(terms, XBAR, DBAR, domain="QQ")


@dataclass(frozen=True)
class Polynomial1V:
    """Univariate polynomial over Q, coefficients low to high, no trailing zeros."""

    coeffs: tuple

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_dict(cls, table: Mapping[int, Fraction]) -> "Polynomial1V":
        if not table:
            return cls(())
        n = max(table)
        return cls(tuple(table.get(k, 0) for k in range(n + 1)))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def derivative(self, order: int = 1) -> "Polynomial1V":
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [k * c for k, c in enumerate(cs)][1:]
        return Polynomial1V(tuple(cs))

    def __call__(self, value):
        out = 0
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def __str__(self):
        from .parser import format_poly1v

        return format_poly1v(self, "t")


def eval_poly(f: Polynomial1V, a: WeylLikeElement) -> WeylLikeElement:
    """``sum f_k a^k`` by Horner's rule."""
    out = WeylLikeElement.zero(a.presentation)
    for c in reversed(f.coeffs):
        out = mul(out, a) + WeylLikeElement.scalar(c, a.presentation)
    return out


def basis_up_to(N: int, pres: AlgebraPresentation = WEYL) -> list[tuple[int, int]]:
    """Monomials ``(i, j)`` with ``i + j <= N``, ordered by degree then x-power."""
    return [(i, d - i) for d in range(N + 1) for i in range(d, -1, -1)]
