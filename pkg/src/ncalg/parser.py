"""Plain-text expressions for every ring context, and the matching printers.

Grammar (whitespace-insensitive, juxtaposition is the product)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor (factor | "*" factor)*
    factor := atom ("^" signed-int)?
    atom   := rational | symbol | "(" expr ")"

Symbols are single ASCII letters drawn from the context alphabet; ``d``
stands for the derivation generator.  Rational literals are ``p`` or ``p/q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

from .field import RatFunc, format_poly
from .series import RingTag, TruncatedSeries, ring_by_name, series_inv
from .weyl import (
    WEYL,
    AlgebraPresentation,
    Polynomial1V,
    WeylLikeElement,
    quantum_plane,
    quantum_weyl,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ElaborationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Group:
    inner: "Expr"


Expr = Union[Num, Sym, Neg, Add, Sub, Mul, Pow, Group]


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class Context:
    """Alphabet and element constructors for one ring or algebra."""

    name: str
    alphabet: frozenset
    invertible: frozenset
    symbol: Callable[[str], object]
    scalar: Callable[[Fraction], object]
    window: int | None = None

    def check_symbol(self, name: str, pos: int, text: str = "") -> None:
        if name not in self.alphabet:
            allowed = ", ".join(sorted(self.alphabet))
            raise ParseError(f"unknown symbol {name!r} for context {self.name} (allowed: {allowed})", pos, text)


def weyl_context(pres: AlgebraPresentation = WEYL) -> Context:
    first, second = pres.generators
    return Context(
        name=str(pres),
        alphabet=frozenset({first, second}),
        invertible=frozenset(),
        symbol=lambda s: WeylLikeElement.gen(s, pres),
        scalar=lambda v: WeylLikeElement.scalar(v, pres),
    )


_RING_ALPHABETS = {
    "A": ({"H", "X"}, {"H", "X"}),
    "B": ({"H", "X"}, {"H", "X"}),
    "C": ({"H", "C", "X"}, {"H", "C", "X"}),
    "E": ({"H", "C", "X"}, {"H", "C", "X"}),
    "R": ({"x", "t"}, {"x", "t"}),
}


def series_context(ring: RingTag, window: int | None = None) -> Context:
    letter = ring.name[0] if ring.name else ("R" if ring.kind == "pseudo" else "A")
    alphabet, invertible = _RING_ALPHABETS[letter]

    def symbol(s: str):
        if s == ring.gen_symbol:
            return TruncatedSeries.gen(ring)
        return TruncatedSeries.scalar(ring, RatFunc.var(s))

    return Context(
        name=str(ring),
        alphabet=frozenset(alphabet),
        invertible=frozenset(invertible),
        symbol=symbol,
        scalar=lambda v: TruncatedSeries.scalar(ring, v),
        window=window,
    )


def poly_context() -> Context:
    return Context(
        name="poly",
        alphabet=frozenset({"t"}),
        invertible=frozenset(),
        symbol=lambda s: Polynomial1V((0, 1)),
        scalar=lambda v: Polynomial1V((v,)),
    )


def get_context(name: str, param=None, window: int | None = None) -> Context:
    """Context by CLI name: weyl, qplane, qweyl, A, B, C, E, R or poly."""
    if name == "weyl":
        return weyl_context(WEYL)
    if name == "qplane":
        return weyl_context(quantum_plane(param))
    if name == "qweyl":
        return weyl_context(quantum_weyl(param))
    if name == "poly":
        return poly_context()
    return series_context(ring_by_name(name, param), window)


def context_for(value) -> Context:
    if isinstance(value, WeylLikeElement):
        return weyl_context(value.presentation)
    if isinstance(value, TruncatedSeries):
        return series_context(value.ring)
    if isinstance(value, Polynomial1V):
        return poly_context()
    raise TypeError(f"no context for {type(value).__name__}")


# ---------------------------------------------------------------------------
# lexer / parser


class _Parser:
    def __init__(self, text: str, context: Context | None):
        self.text = text
        self.context = context
        self.tokens = self._lex(text)
        self.i = 0

    def _lex(self, text: str):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j < len(text) and text[j] == "/":
                    k = j + 1
                    while k < len(text) and text[k].isspace():
                        k += 1
                    m = k
                    while m < len(text) and text[m].isdigit():
                        m += 1
                    if m == k:
                        raise ParseError("malformed rational literal", j, text)
                    den = int(text[k:m])
                    if den == 0:
                        raise ParseError("zero denominator in rational literal", k, text)
                    tokens.append(("num", Fraction(int(text[i:j]), den), i))
                    i = m
                else:
                    tokens.append(("num", Fraction(int(text[i:j])), i))
                    i = j
                continue
            if ch.isascii() and ch.isalpha():
                tokens.append(("sym", ch, i))
                i += 1
                continue
            if ch in "+-*^()":
                tokens.append((ch, ch, i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", i, text)
        tokens.append(("end", None, len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}" if tok[0] != "end" else f"expected {kind!r}, found end of input", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return e

    def expr(self) -> Expr:
        tok = self.peek()
        if tok[0] in "+-" and len(tok[0]) == 1:
            self.take()
            e = self.term()
            if tok[0] == "-":
                e = Neg(e)
        else:
            e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def _starts_factor(self) -> bool:
        return self.peek()[0] in ("num", "sym", "(")

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                e = Mul(e, self.factor())
            elif self._starts_factor():
                e = Mul(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "^":
            caret = self.take()
            sign = 1
            if self.peek()[0] in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            tok = self.peek()
            if tok[0] != "num" or tok[1].denominator != 1:
                raise ParseError("malformed exponent: expected an integer", tok[2], self.text)
            self.take()
            return Pow(base, sign * int(tok[1]), caret[2])
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return Num(tok[1])
        if tok[0] == "sym":
            self.take()
            if self.context is not None:
                self.context.check_symbol(tok[1], tok[2], self.text)
            return Sym(tok[1], tok[2])
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return Group(inner)
        if tok[0] == "end":
            raise ParseError("unexpected end of input", tok[2], self.text)
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)


def parse(text: str, context: Context | str | None = None, param=None) -> Expr:
    """Parse ``text``; symbols are checked against the context alphabet."""
    if isinstance(context, str):
        context = get_context(context, param)
    return _Parser(text, context).parse()


# ---------------------------------------------------------------------------
# elaboration


def _is_invertible_value(value) -> bool:
    if isinstance(value, TruncatedSeries):
        return value.is_exact and len(value.coeffs) == 1
    if isinstance(value, WeylLikeElement):
        return value.is_scalar and not value.is_zero
    return False


def _invert(value):
    if isinstance(value, TruncatedSeries):
        return series_inv(value)
    return WeylLikeElement.scalar(1 / value.scalar_value(), value.presentation)


def evaluate(e: Expr, symbol: Callable[[str], object], scalar: Callable[[Fraction], object],
             invertible=frozenset(), allow_value_inverse: bool = True):
    """Evaluate an Expr with the given symbol and scalar constructors."""

    def go(node):
        if isinstance(node, Num):
            return scalar(node.value)
        if isinstance(node, Sym):
            return symbol(node.name)
        if isinstance(node, Group):
            return go(node.inner)
        if isinstance(node, Neg):
            return -go(node.arg)
        if isinstance(node, Add):
            return go(node.left) + go(node.right)
        if isinstance(node, Sub):
            return go(node.left) - go(node.right)
        if isinstance(node, Mul):
            return go(node.left) * go(node.right)
        if isinstance(node, Pow):
            base = go(node.base)
            if node.exp >= 0:
                return base**node.exp
            is_gen = isinstance(node.base, Sym) and node.base.name in invertible
            if not is_gen and not (allow_value_inverse and _is_invertible_value(base)):
                what = node.base.name if isinstance(node.base, Sym) else "subexpression"
                raise ElaborationError(f"negative power of non-invertible {what} (position {node.pos})")
            return _invert(base) ** (-node.exp)
        raise TypeError(f"unknown node {node!r}")

    return go(e)


def elaborate(e: Expr | str, context: Context | str, param=None, window: int | None = None):
    """Turn an Expr into a normal-form element or (truncated) series."""
    if isinstance(context, str):
        context = get_context(context, param, window)
    if isinstance(e, str):
        e = parse(e, context)
    value = evaluate(e, context.symbol, context.scalar, context.invertible)
    win = window if window is not None else context.window
    if isinstance(value, TruncatedSeries) and win is not None:
        value = value.truncate(win)
    return value


def parse_element(text: str, context: str, param=None, window: int | None = None):
    return elaborate(parse(text, get_context(context, param, window)), get_context(context, param, window), window=window)


def parse_poly(text: str) -> Polynomial1V:
    ctx = poly_context()

    def poly_mul(a, b):
        out: dict = {}
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                out[i + j] = out.get(i + j, 0) + x * y
        return Polynomial1V.from_dict(out)

    # evaluate through a tiny wrapper supporting ring operations
    class P:
        def __init__(self, p):
            self.p = p

        def __add__(self, o):
            n = max(len(self.p.coeffs), len(o.p.coeffs))
            a = list(self.p.coeffs) + [0] * (n - len(self.p.coeffs))
            b = list(o.p.coeffs) + [0] * (n - len(o.p.coeffs))
            return P(Polynomial1V(tuple(x + y for x, y in zip(a, b))))

        def __neg__(self):
            return P(Polynomial1V(tuple(-c for c in self.p.coeffs)))

        def __sub__(self, o):
            return self + (-o)

        def __mul__(self, o):
            return P(poly_mul(self.p, o.p))

        def __pow__(self, n):
            out = P(Polynomial1V((1,)))
            for _ in range(n):
                out = out * self
            return out

    e = parse(text, ctx)
    return evaluate(e, lambda s: P(Polynomial1V((0, 1))), lambda v: P(Polynomial1V((v,))),
                    allow_value_inverse=False).p


# ---------------------------------------------------------------------------
# printers


def _join_terms(terms) -> str:
    """``terms`` are (negative: bool, body: str) pairs."""
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _power(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def format_weyl(a: WeylLikeElement) -> str:
    first, second = a.presentation.generators
    terms = []
    for (i, j), c in a.terms():
        factors = []
        if i:
            factors.append(_power(first, i))
        if j:
            factors.append(_power(second, j))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        terms.append((c < 0, body))
    return _join_terms(terms)


def format_coeff(c: RatFunc) -> tuple[bool, str, bool]:
    """(negative, body, is_one) for a series coefficient."""
    if c.is_constant:
        v = c.constant_value()
        return v < 0, str(abs(v)), abs(v) == 1
    num, den = c.num, c.den
    neg = False
    if len(num.terms()) == 1 and num.LC < 0:
        neg, num = True, -num
    body = format_poly(num)
    if len(num.terms()) > 1 or body.startswith("-"):
        body = f"({body})"
    if den != den.ring.one:
        inv = f"({format_poly(den)})^-1"
        body = inv if body == "1" else f"{body}*{inv}"
    return neg, body, False


def format_series(s: TruncatedSeries) -> str:
    g = s.ring.gen_symbol
    terms = []
    for e in s.known_exponents():
        neg, body, is_one = format_coeff(s.coeffs[e])
        if e == 0:
            terms.append((neg, body))
            continue
        gpart = _power(g, e)
        terms.append((neg, gpart if is_one else f"{body}*{gpart}"))
    return _join_terms(terms)


def format_poly1v(f: Polynomial1V, var: str = "t") -> str:
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = _power(var, k)
        else:
            body = f"{mag}*{_power(var, k)}"
        terms.append((c < 0, body))
    return _join_terms(terms)


def to_text(value) -> str:
    if isinstance(value, WeylLikeElement):
        return format_weyl(value)
    if isinstance(value, TruncatedSeries):
        return format_series(value)
    if isinstance(value, Polynomial1V):
        return format_poly1v(value)
    if isinstance(value, RatFunc):
        return str(value)
    return str(value)
