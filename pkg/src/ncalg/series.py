"""Windowed arithmetic in skew Laurent series and pseudo-differential rings.

A :class:`TruncatedSeries` stores the coefficients it knows for exponents
``>= low``.  ``low=None`` marks an exact finite Laurent polynomial; otherwise
everything below ``low`` is unknown (not zero).  Arithmetic tracks the window
on which its result is guaranteed: products keep the shifted intersection,
sums the intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .field import FieldEndo, RatFunc, apply_endo, fixed_field

NEG_INF = float("-inf")
DEFAULT_WINDOW = 8


class WindowExhausted(ValueError):
    """Every known coefficient is zero: the series is zero within its window."""


@dataclass(frozen=True)
class RingTag:
    """A coefficient field together with its twist.

    ``kind`` is ``"skew"`` (X l = sigma(l) X) or ``"pseudo"`` (t l = l t + delta(l)).
    """

    kind: str
    field: str
    twist: FieldEndo
    name: str = ""

    def __post_init__(self):
        if self.kind == "skew" and not self.twist.is_automorphism:
            raise ValueError("skew Laurent rings need an automorphism twist")
        if self.kind == "pseudo" and self.twist.is_automorphism:
            raise ValueError("pseudo-differential rings need a derivation twist")
        if self.kind not in ("skew", "pseudo"):
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @property
    def gen_symbol(self) -> str:
        return "X" if self.kind == "skew" else "t"

    @property
    def coeff_variable(self) -> str:
        """The indeterminate moved by the twist (H or x)."""
        return self.twist.variable

    @property
    def fixed_field(self) -> str:
        return fixed_field(self.twist, self.field)

    @property
    def coeff_symbols(self) -> tuple[str, ...]:
        return tuple(v for v in ("H", "C", "x") if v in self.field)

    def __str__(self):
        return self.name or f"{self.kind}[{self.field}; {self.twist}]"


def ring_A() -> RingTag:
    return RingTag("skew", "K(H)", FieldEndo.shift(), "A")


def ring_B(lam) -> RingTag:
    return RingTag("skew", "K(H)", FieldEndo.scale(lam), f"B({Fraction(lam)})")


def ring_C() -> RingTag:
    return RingTag("skew", "K(H,C)", FieldEndo.shift(), "C")


def ring_E(lam) -> RingTag:
    return RingTag("skew", "K(H,C)", FieldEndo.scale(lam), f"E({Fraction(lam)})")


def ring_R() -> RingTag:
    return RingTag("pseudo", "K(x)", FieldEndo.deriv(), "R")


def ring_by_name(name: str, lam=None) -> RingTag:
    name = name.upper()
    if name == "A":
        return ring_A()
    if name == "C":
        return ring_C()
    if name == "R":
        return ring_R()
    if name in ("B", "E"):
        if lam is None:
            raise ValueError(f"ring {name} needs a lambda parameter")
        return ring_B(lam) if name == "B" else ring_E(lam)
    raise ValueError(f"unknown ring {name!r}; expected one of A, B, C, E, R")


def gbinom(n: int, k: int) -> int:
    """Binomial coefficient valid for negative ``n``."""
    num = 1
    for r in range(k):
        num *= n - r
    return num // factorial(k)


def _is_x_polynomial(r: RatFunc) -> bool:
    return not r.den.degree(0) > 0  # ring generator 0 is x


class TruncatedSeries:
    """Inverse Laurent series ``sum a_i g^i`` with coefficients on the left."""

    __slots__ = ("ring", "coeffs", "low")

    def __init__(self, ring: RingTag, coeffs: Mapping[int, RatFunc] | None = None, low: int | None = None):
        self.ring = ring
        clean = {}
        for e, c in (coeffs or {}).items():
            c = RatFunc.coerce(c)
            if c.is_zero or (low is not None and e < low):
                continue
            clean[int(e)] = c
        self.coeffs = clean
        self.low = low

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring: RingTag) -> "TruncatedSeries":
        return cls(ring, {})

    @classmethod
    def scalar(cls, ring: RingTag, value) -> "TruncatedSeries":
        return cls(ring, {0: RatFunc.coerce(value)})

    @classmethod
    def monomial(cls, ring: RingTag, exponent: int, coeff=1) -> "TruncatedSeries":
        return cls(ring, {exponent: RatFunc.coerce(coeff)})

    @classmethod
    def gen(cls, ring: RingTag) -> "TruncatedSeries":
        return cls.monomial(ring, 1)

    def _like(self, coeffs, low) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, coeffs, low)

    # -- window bookkeeping ----------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.low is None

    @property
    def is_exact_zero(self) -> bool:
        return self.low is None and not self.coeffs

    @property
    def is_zero_within_window(self) -> bool:
        return not self.coeffs

    @property
    def bound(self):
        """An upper bound for the degree: the top known exponent, else ``low - 1``."""
        if self.coeffs:
            return max(self.coeffs)
        if self.low is None:
            return NEG_INF
        return self.low - 1

    @property
    def top(self) -> int:
        return series_degree(self)

    @property
    def window(self):
        """Number of known exponents from the top down (``inf`` when exact)."""
        if self.low is None:
            return float("inf")
        return self.bound - self.low + 1

    def truncate(self, T: int) -> "TruncatedSeries":
        """Keep at most ``T`` exponents below (and including) the top."""
        if T < 1:
            raise ValueError("window must be positive")
        if self.is_exact_zero:
            return self
        new_low = self.bound - T + 1
        if self.low is not None:
            new_low = max(new_low, self.low)
        return self._like(self.coeffs, new_low)

    def coeff(self, e: int) -> RatFunc:
        if self.low is not None and e < self.low:
            raise WindowExhausted(f"coefficient of exponent {e} lies below the known window (low={self.low})")
        return self.coeffs.get(e, RatFunc.const(0))

    def known_exponents(self):
        return sorted(self.coeffs, reverse=True)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return TruncatedSeries.scalar(self.ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        low = _max_low(self.low, other.low)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out, low)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()}, self.low)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return series_mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return series_mul(other, self)

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        out = TruncatedSeries.scalar(self.ring, 1)
        for _ in range(n):
            out = series_mul(out, self)
        return out

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality on the exponents both operands know."""
        return (self - other).is_zero_within_window

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.low, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"TruncatedSeries({self.ring}, {self}, low={self.low})"

    def __str__(self):
        from .parser import format_series

        text = format_series(self)
        if self.low is not None:
            text += f" + O({self.ring.gen_symbol}^{self.low - 1})"
        return text


def _max_low(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def series_mul(a: TruncatedSeries, b: TruncatedSeries, window: int = DEFAULT_WINDOW) -> TruncatedSeries:
    """Product, exact on the shifted intersection of the input windows.

    ``window`` only matters for exact pseudo-differential inputs whose product
    is an infinite series (a negative power of t meeting a coefficient that is
    not polynomial in x); the result is then cut to that many exponents.
    """
    a._check(b)
    ring = a.ring
    if a.is_exact_zero or b.is_exact_zero:
        return TruncatedSeries.zero(ring)
    ta, tb = a.bound, b.bound
    low = None
    if a.low is not None:
        low = a.low + tb
    if b.low is not None:
        low = _max_low(low, ta + b.low)
    pseudo = ring.kind == "pseudo"
    if pseudo and low is None:
        if any(i < 0 for i in a.coeffs) and not all(_is_x_polynomial(c) for c in b.coeffs.values()):
            low = ta + tb - window + 1
    twist = ring.twist
    out: dict = {}
    for i, ai in a.coeffs.items():
        for j, bj in b.coeffs.items():
            e = i + j
            if low is not None and e < low:
                continue
            if not pseudo:
                term = ai * apply_endo(twist, bj, i)
                out[e] = out[e] + term if e in out else term
                continue
            k = 0
            d = bj
            while not d.is_zero and (low is None or e - k >= low):
                c = gbinom(i, k)
                if i >= 0 and k > i:
                    break
                if c:
                    term = ai * d * c
                    out[e - k] = out[e - k] + term if e - k in out else term
                k += 1
                d = apply_endo(twist, d, 1)
    return TruncatedSeries(ring, out, low)


def commutator(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return series_mul(a, b) - series_mul(b, a)


def series_degree(a: TruncatedSeries):
    """Degree; ``-inf`` for the exact zero series.

    Raises :class:`WindowExhausted` when every known coefficient is zero but
    the series is not known to be zero.
    """
    if a.coeffs:
        return max(a.coeffs)
    if a.low is None:
        return NEG_INF
    raise WindowExhausted("series is zero within its window; degree unknown")


def leading(a: TruncatedSeries) -> tuple[RatFunc, int]:
    if a.is_exact_zero:
        raise ValueError("the zero series has no leading term")
    n = series_degree(a)
    return a.coeffs[n], n


def _solve_leading(ring: RingTag, lead: RatFunc, n: int, rhs: RatFunc) -> RatFunc:
    """``y`` with ``lead * g^n * y = rhs * g^n`` at the top order."""
    if ring.kind == "skew":
        return apply_endo(ring.twist, rhs / lead, -n)
    return rhs / lead


def series_inv(a: TruncatedSeries, window: int | None = None) -> TruncatedSeries:
    """Two-sided inverse, correct on ``min(window, a.window)`` exponents."""
    if a.is_exact_zero:
        raise ZeroDivisionError("inverse of the zero series")
    lead, n = leading(a)
    ring = a.ring
    if a.is_exact and len(a.coeffs) == 1:
        if ring.kind == "skew":
            return TruncatedSeries.monomial(ring, -n, apply_endo(ring.twist, lead.inverse(), -n))
        if n == 0 or lead.is_constant:
            return TruncatedSeries.monomial(ring, -n, lead.inverse())
    T = window or (a.window if not a.is_exact else DEFAULT_WINDOW)
    T = int(min(T, a.window))
    b: dict = {}
    for s in range(T):
        partial = TruncatedSeries(ring, b, -n - T + 1)
        prod = series_mul(a, partial)
        target = RatFunc.const(1 if s == 0 else 0)
        residual = target - prod.coeff(-s) if -s >= prod.low else target
        y = _solve_leading(ring, lead, n, residual)
        if not y.is_zero:
            b[-n - s] = y
    return TruncatedSeries(ring, b, -n - T + 1)


def lift_weyl_like(element, ring: RingTag, window: int = DEFAULT_WINDOW) -> TruncatedSeries:
    """Image of a presented-algebra element in ``ring`` (via the embedding catalogue)."""
    from .embed import embedding_for

    spec = embedding_for(element, ring)
    from .embed import embed_element

    return embed_element(spec, element, window)
