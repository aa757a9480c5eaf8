"""Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`.  Rational functions in the
indeterminates ``H``, ``C`` and ``x`` are :class:`RatFunc`, kept in a
canonical coprime form with a monic denominator (graded-lex order,
``H < C < x``).  :class:`FieldEndo` covers the three twists used by the
series rings: the shift ``H -> H - 1``, the scaling ``H -> lam*H`` and the
derivation ``d/dx``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

# generator order x > C > H in the ring gives grlex with H < C < x
_RING, _X, _C, _H = ring("x,C,H", QQ, grlex)
_GENS = {"x": _X, "C": _C, "H": _H}
_GEN_INDEX = {"x": 0, "C": 1, "H": 2}
VARIABLES = ("H", "C", "x")

Scalar = Union[int, Fraction]


def _qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _frac(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; floats are rejected."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


class RatFunc:
    """Rational function over Q in H, C, x, stored as a canonical num/den pair.

    Instances are immutable and hashable; two RatFuncs are equal exactly when
    they are equal as rational functions.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if den is None:
            den = _RING.one
        if not _canonical:
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                num, den = _RING.zero, _RING.one
            elif den != _RING.one:
                num, den = num.cancel(den)
                lc = den.LC
                if lc != 1:
                    num, den = num.quo_ground(lc), den.quo_ground(lc)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, value: Scalar) -> "RatFunc":
        return cls(_RING(_qq(value)), _canonical=True)

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        if name not in _GENS:
            raise ValueError(f"unknown indeterminate {name!r}; expected one of {VARIABLES}")
        return cls(_GENS[name], _canonical=True)

    @classmethod
    def coerce(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to RatFunc")

    @classmethod
    def from_polys(cls, num, den) -> "RatFunc":
        return cls(num, den)

    # -- queries ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return self.den == _RING.one and self.num.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a constant")
        return _frac(self.num.LC) if self.num else Fraction(0)

    @property
    def variables(self) -> frozenset:
        found = set()
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                for name, idx in _GEN_INDEX.items():
                    if monom[idx]:
                        found.add(name)
        return frozenset(found)

    @property
    def field_tag(self) -> str:
        """Smallest of K, K(H), K(C), K(H,C), K(x) containing this function."""
        vs = self.variables
        if not vs:
            return "K"
        if "x" in vs:
            if vs & {"H", "C"}:
                return "K(H,C,x)"
            return "K(x)"
        return "K(" + ",".join(v for v in ("H", "C") if v in vs) + ")"

    def depends_on(self, name: str) -> bool:
        return name in self.variables

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "RatFunc") -> None:
        mine, theirs = self.variables, other.variables
        if ("x" in mine and theirs & {"H", "C"}) or ("x" in theirs and mine & {"H", "C"}):
            raise ValueError("incompatible coefficient fields: K(x) mixed with K(H) or K(H,C)")

    def __add__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        self._check(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc.const(0)
            return RatFunc(self.num.mul_ground(_qq(other)), self.den, _canonical=True)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatFunc.const(0)
        self._check(other)
        if self.den == _RING.one and other.den == _RING.one:
            return RatFunc(self.num * other.num, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, _canonical=True)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.num
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero

    # -- substitution helpers --------------------------------------------
    def substitute(self, name: str, poly) -> "RatFunc":
        """Replace the indeterminate ``name`` by a polynomial of the ring."""
        gen = _GENS[name]
        return RatFunc(self.num.compose(gen, poly), self.den.compose(gen, poly))

    def derivative(self, name: str) -> "RatFunc":
        gen = _GENS[name]
        if self.den == _RING.one:
            return RatFunc(self.num.diff(gen), _canonical=True)
        num = self.num.diff(gen) * self.den - self.num * self.den.diff(gen)
        return RatFunc(num, self.den**2)

    def poly_in(self, name: str) -> dict:
        """Numerator coefficients by power of ``name`` (as RatFuncs over the others).

        Only meaningful for polynomial (denominator-free in ``name``) inputs.
        """
        idx = _GEN_INDEX[name]
        out: dict = {}
        for monom, coeff in self.num.terms():
            rest = list(monom)
            k = rest[idx]
            rest[idx] = 0
            term = _RING({tuple(rest): coeff})
            out[k] = out.get(k, _RING.zero) + term
        return {k: RatFunc(v, self.den) for k, v in out.items() if v}

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        num = format_poly(self.num)
        if self.den == _RING.one:
            return num
        return f"({num})/({format_poly(self.den)})"


def format_poly(poly) -> str:
    """Render a ring polynomial with ``^`` powers and ``p/q`` coefficients."""
    if not poly:
        return "0"
    parts = []
    for monom, coeff in poly.terms():  # already sorted descending in grlex
        c = _frac(coeff)
        factors = []
        for name in ("H", "C", "x"):
            e = monom[_GEN_INDEX[name]]
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def ring_poly(name: str):
    """The ring generator for ``name`` (for building substitution polynomials)."""
    return _GENS[name]


def ring_const(value: Scalar):
    return _RING(_qq(value))


H = RatFunc.var("H")
C = RatFunc.var("C")
X_VAR = RatFunc.var("x")
ONE = RatFunc.const(1)
ZERO = RatFunc.const(0)


def ratfunc_arith(a, b, op: str) -> RatFunc:
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# field endomorphisms


@dataclass(frozen=True)
class FieldEndo:
    """A twist of a coefficient field.

    ``kind`` is ``"shift"`` (H -> H-1), ``"scale"`` (H -> lam*H) or
    ``"deriv"`` (d/dx).  Shift and scale fix C and the constants.
    """

    kind: str
    lam: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("shift", "scale", "deriv"):
            raise ValueError(f"unknown endomorphism kind {self.kind!r}")
        if self.kind == "scale":
            if self.lam is None:
                raise ValueError("scale needs a parameter")
            lam = Fraction(self.lam)
            if lam in (0, 1, -1):
                raise ValueError(f"scale parameter must avoid 0 and roots of unity, got {lam}")
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @classmethod
    def shift(cls) -> "FieldEndo":
        return cls("shift")

    @classmethod
    def scale(cls, lam) -> "FieldEndo":
        return cls("scale", Fraction(lam))

    @classmethod
    def deriv(cls) -> "FieldEndo":
        return cls("deriv")

    @property
    def is_automorphism(self) -> bool:
        return self.kind != "deriv"

    @property
    def variable(self) -> str:
        return "x" if self.kind == "deriv" else "H"

    def __str__(self):
        if self.kind == "shift":
            return "H -> H - 1"
        if self.kind == "scale":
            return f"H -> {self.lam}*H"
        return "d/dx"


@lru_cache(maxsize=1 << 16)
def _apply_cached(endo: FieldEndo, f: RatFunc, power: int) -> RatFunc:
    if endo.kind == "shift":
        return f.substitute("H", _H - power)
    if endo.kind == "scale":
        return f.substitute("H", _H * _qq(endo.lam**power))
    out = f
    for _ in range(power):
        if out.is_zero:
            break
        out = out.derivative("x")
    return out


def apply_endo(endo: FieldEndo, f, power: int = 1) -> RatFunc:
    """``endo**power`` applied to ``f``; negative powers only for automorphisms."""
    f = RatFunc.coerce(f)
    if endo.kind == "deriv" and power < 0:
        raise ValueError("negative power of a derivation is undefined (derivations are not invertible)")
    if power == 0 or f.is_zero:
        return f
    var = endo.variable
    if not f.depends_on(var):
        return ZERO if endo.kind == "deriv" else f
    return _apply_cached(endo, f, power)


def is_fixed(endo: FieldEndo, f) -> bool:
    """Membership in the fixed field (automorphisms) or the kernel (derivation)."""
    f = RatFunc.coerce(f)
    if endo.kind == "deriv":
        return apply_endo(endo, f, 1).is_zero
    return apply_endo(endo, f, 1) == f


def fixed_field(endo: FieldEndo, ambient: str) -> str:
    """Name of the fixed field of ``endo`` inside the ambient field."""
    if endo.kind == "deriv":
        return "K"
    return "K(C)" if "C" in ambient else "K"


def check_no_periodic(endo: FieldEndo, f) -> bool:
    """Certify that ``f`` outside the fixed field has no finite period.

    Over Q this is decidable: a non-constant rational function in H is never
    invariant under a nonzero translation, nor under a scaling by a rational
    that is not 0 or +-1.  The checks below make that argument concrete:
    a translation moves the roots/poles of the H-part, a scaling rescales the
    coefficient of some non-constant H-power.
    """
    if endo.kind == "deriv":
        raise ValueError("periodicity hypothesis concerns automorphisms, not derivations")
    f = RatFunc.coerce(f)
    if is_fixed(endo, f):
        return True
    if endo.kind == "shift":
        # sigma^i(f) = f would force num(H-i)den(H) = num(H)den(H-i); compare
        # the subleading H-coefficient, which shifts linearly in i
        return _shift_aperiodic(f)
    # scale: some monomial H^k (k != 0) of num/den is multiplied by lam^(k i) != 1
    return _scale_aperiodic(f)


def _h_degree_profile(poly):
    idx = _GEN_INDEX["H"]
    return {m[idx] for m in poly.monoms()}


def _shift_aperiodic(f: RatFunc) -> bool:
    # f is not shift-invariant; a shift-periodic rational function would have a
    # finite orbit of poles and zeros under H -> H - i, impossible unless the
    # H-dependence is trivial. Decide by checking the H-degree of num/den.
    return bool(max(_h_degree_profile(f.num)) > 0 or max(_h_degree_profile(f.den)) > 0)


def _scale_aperiodic(f: RatFunc) -> bool:
    profile = _h_degree_profile(f.num) | _h_degree_profile(f.den)
    return any(k != 0 for k in profile)
