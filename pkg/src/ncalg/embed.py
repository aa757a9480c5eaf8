"""Homomorphisms of presented algebras into skew Laurent / pseudo-differential rings.

Each :class:`EmbeddingSpec` lists exact images of the source generators and
the defining relations of the source algebra as text pairs, so a relation can
be pushed through the embedding and compared in the target ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .field import RatFunc
from .parser import Context, evaluate, format_poly1v, parse
from .series import (
    RingTag,
    TruncatedSeries,
    commutator,
    ring_A,
    ring_B,
    ring_C,
    ring_E,
    ring_R,
)
from .weyl import Polynomial1V, WeylLikeElement


@dataclass(frozen=True)
class EmbeddingSpec:
    name: str
    ring: RingTag
    images: Mapping[str, TruncatedSeries]
    relations: tuple[tuple[str, str], ...]
    invertible: frozenset = frozenset()
    source: str = ""
    parameter: object = None

    def __post_init__(self):
        alphabet = set(self.images)
        for lhs, rhs in self.relations:
            for side in (lhs, rhs):
                parse(side, self.source_context())  # raises on unknown generators
        if not alphabet:
            raise ValueError("embedding without generators")

    @property
    def generators(self) -> tuple[str, ...]:
        return tuple(self.images)

    def source_context(self) -> Context:
        ring = self.ring
        images = self.images

        def symbol(s: str):
            return images[s]

        return Context(
            name=self.source or self.name,
            alphabet=frozenset(images),
            invertible=self.invertible,
            symbol=symbol,
            scalar=lambda v: TruncatedSeries.scalar(ring, v),
        )


def _rat(v) -> str:
    v = Fraction(v)
    return str(v) if v >= 0 else f"({v})"


def a1_to_A() -> EmbeddingSpec:
    R = ring_A()
    X = TruncatedSeries.gen(R)
    H = RatFunc.var("H")
    return EmbeddingSpec(
        name="A1->A",
        ring=R,
        images={"x": X, "d": TruncatedSeries.monomial(R, -1, H)},
        relations=(("d*x - x*d", "1"),),
        source="weyl",
    )


def kleinian_to_A(a: Polynomial1V) -> EmbeddingSpec:
    if not a.coeffs:
        raise ValueError("the deformation polynomial a(H) must be nonzero")
    R = ring_A()
    aH = a(RatFunc.var("H"))
    a_text = format_poly1v(a, "H")
    a_shift = format_poly1v(a, "(H - 1)")
    return EmbeddingSpec(
        name="A(a)->A",
        ring=R,
        images={
            "X": TruncatedSeries.gen(R),
            "Y": TruncatedSeries.monomial(R, -1, aH),
            "H": TruncatedSeries.scalar(R, RatFunc.var("H")),
        },
        relations=(
            ("X*H", "(H - 1)*X"),
            ("Y*H", "(H + 1)*Y"),
            ("Y*X", a_text),
            ("X*Y", a_shift),
        ),
        source="A(a)",
        parameter=a,
    )


def qplane_to_B(lam) -> EmbeddingSpec:
    lam = Fraction(lam)
    R = ring_B(lam)
    return EmbeddingSpec(
        name="Lambda->B",
        ring=R,
        images={"x": TruncatedSeries.gen(R), "y": TruncatedSeries.monomial(R, -1, RatFunc.var("H"))},
        relations=(("x*y", f"{_rat(lam)}*y*x"),),
        source=f"qplane({lam})",
        parameter=lam,
    )


def qweyl_to_B(mu) -> EmbeddingSpec:
    mu = Fraction(mu)
    R = ring_B(mu)
    coeff = (RatFunc.var("H") - 1) * (1 / (mu - 1))
    return EmbeddingSpec(
        name="A1(mu)->B",
        ring=R,
        images={"x": TruncatedSeries.monomial(R, -1, coeff), "d": TruncatedSeries.gen(R)},
        relations=(("d*x - " + f"{_rat(mu)}*x*d", "1"),),
        source=f"qweyl({mu})",
        parameter=mu,
    )


def usl2_to_C() -> EmbeddingSpec:
    R = ring_C()
    H, C = RatFunc.var("H"), RatFunc.var("C")
    return EmbeddingSpec(
        name="Usl2->C",
        ring=R,
        images={
            "X": TruncatedSeries.gen(R),
            "Y": TruncatedSeries.monomial(R, -1, C - H * (H + 1)),
            "H": TruncatedSeries.scalar(R, H),
        },
        relations=(
            ("H*X - X*H", "X"),
            ("H*Y - Y*H", "-Y"),
            ("X*Y - Y*X", "2*H"),
        ),
        source="usl2",
    )


def _uq_constants(q: Fraction):
    h = q - 1 / q
    return h, 1 / (q * q - 1), 1 / (1 / (q * q) - 1)


def _uq_correction(q: Fraction) -> RatFunc:
    # h^-1 (H^2/(q^2-1) - H^-2/(q^-2-1))
    h, alpha, beta = _uq_constants(q)
    H = RatFunc.var("H")
    return (H**2 * alpha - H ** (-2) * beta) * (1 / h)


def uqsl2_to_E(q) -> EmbeddingSpec:
    q = Fraction(q)
    R = ring_E(q)
    H, C = RatFunc.var("H"), RatFunc.var("C")
    h, _, _ = _uq_constants(q)
    return EmbeddingSpec(
        name="Uqsl2->E",
        ring=R,
        images={
            "X": TruncatedSeries.gen(R),
            "Y": TruncatedSeries.monomial(R, -1, C + _uq_correction(q)),
            "H": TruncatedSeries.scalar(R, H),
        },
        relations=(
            ("X*H", f"{_rat(q)}*H*X"),
            ("Y*H", f"{_rat(1 / q)}*H*Y"),
            ("X*Y - Y*X", f"{_rat(1 / h)}*(H^2 - H^-2)"),
            ("H*H^-1", "1"),
        ),
        invertible=frozenset({"H"}),
        source=f"uqsl2({q})",
        parameter=q,
    )


def a1_to_R() -> EmbeddingSpec:
    """A1 = D(K[x]) inside the pseudo-differential ring: x -> x, d -> t."""
    R = ring_R()
    return EmbeddingSpec(
        name="A1->R",
        ring=R,
        images={"x": TruncatedSeries.scalar(R, RatFunc.var("x")), "d": TruncatedSeries.gen(R)},
        relations=(("d*x - x*d", "1"),),
        source="weyl",
    )


def catalogue(lam=2, mu=3, q=2, a: Polynomial1V | None = None) -> list[EmbeddingSpec]:
    """The six embeddings with the given parameters."""
    if a is None:
        a = Polynomial1V((0, 1))
    return [a1_to_A(), kleinian_to_A(a), qplane_to_B(lam), qweyl_to_B(mu), usl2_to_C(), uqsl2_to_E(q)]


def embedding_by_name(name: str, param=None, a: Polynomial1V | None = None) -> EmbeddingSpec:
    key = name.lower()
    if key in ("a1", "weyl"):
        return a1_to_A()
    if key in ("a1r", "weyl-r"):
        return a1_to_R()
    if key in ("kleinian", "aa"):
        return kleinian_to_A(a if a is not None else Polynomial1V((0, 1)))
    if key in ("qplane", "lambda"):
        return qplane_to_B(param if param is not None else 2)
    if key in ("qweyl",):
        return qweyl_to_B(param if param is not None else 3)
    if key == "usl2":
        return usl2_to_C()
    if key == "uqsl2":
        return uqsl2_to_E(param if param is not None else 2)
    raise ValueError(f"unknown embedding {name!r}")


def embedding_for(element, ring: RingTag) -> EmbeddingSpec:
    """Default embedding carrying ``element``'s algebra into ``ring``."""
    if not isinstance(element, WeylLikeElement):
        raise ValueError(f"no embedding defined for {type(element).__name__} into {ring}")
    pres = element.presentation
    if pres.kind == "weyl":
        if ring == ring_A():
            return a1_to_A()
        if ring == ring_R():
            return a1_to_R()
    elif pres.kind == "qplane" and ring == ring_B(pres.param):
        return qplane_to_B(pres.param)
    elif pres.kind == "qweyl" and ring == ring_B(pres.param):
        return qweyl_to_B(pres.param)
    raise ValueError(f"no embedding defined from {pres} into {ring}")


def embed_element(spec: EmbeddingSpec, word, window: int | None = None) -> TruncatedSeries:
    """Image of a word (text/Expr over the source generators) or a WeylLikeElement."""
    if isinstance(word, WeylLikeElement):
        first, second = word.presentation.generators
        if first not in spec.images or second not in spec.images:
            raise ValueError(f"embedding {spec.name} does not accept elements of {word.presentation}")
        gx, gy = spec.images[first], spec.images[second]
        out = TruncatedSeries.zero(spec.ring)
        for (i, j), c in word.coeffs.items():
            out = out + TruncatedSeries.scalar(spec.ring, c) * (gx**i) * (gy**j)
        value = out
    elif isinstance(word, (int, Fraction)):
        value = TruncatedSeries.scalar(spec.ring, word)
    else:
        ctx = spec.source_context()
        expr = parse(word, ctx) if isinstance(word, str) else word
        value = evaluate(expr, ctx.symbol, ctx.scalar, ctx.invertible, allow_value_inverse=False)
    if window is not None:
        value = value.truncate(window)
    return value


def relation_residuals(spec: EmbeddingSpec, window: int) -> list[tuple[str, str, TruncatedSeries]]:
    """``image(lhs) - image(rhs)`` per relation, truncated to ``window``."""
    out = []
    for lhs, rhs in spec.relations:
        diff = embed_element(spec, lhs) - embed_element(spec, rhs)
        out.append((lhs, rhs, diff.truncate(window)))
    return out


def verify_relations(spec: EmbeddingSpec, window: int = 8) -> bool:
    return all(d.is_zero_within_window for _, _, d in relation_residuals(spec, window))


@dataclass(frozen=True)
class CasimirElement:
    algebra: str
    expression: str
    image: TruncatedSeries
    spec: EmbeddingSpec


def casimir(algebra: str, parameter=None) -> CasimirElement:
    """Casimir element of Usl2 or Uqsl2 and its image in C resp. E_q."""
    algebra = algebra.lower()
    if algebra == "usl2":
        spec = usl2_to_C()
        expression = "Y*X + H*(H + 1)"
    elif algebra == "uqsl2":
        q = Fraction(parameter if parameter is not None else 2)
        if q in (0, 1, -1):
            raise ValueError("q must avoid 0 and +-1")
        spec = uqsl2_to_E(q)
        h, alpha, beta = _uq_constants(q)
        c2, cm2 = alpha / h, beta / h
        expression = f"Y*X - {_rat(c2)}*H^2 + {_rat(cm2)}*H^-2"
    else:
        raise ValueError(f"unknown algebra {algebra!r}; expected usl2 or uqsl2")
    image = embed_element(spec, expression)
    return CasimirElement(algebra, expression, image, spec)


def casimir_commutes(cas: CasimirElement, window: int = 8) -> bool:
    return all(commutator(cas.image, img).truncate(window).is_zero_within_window for img in cas.spec.images.values())
