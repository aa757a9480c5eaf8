"""Command-line interface.

Every command builds a report dictionary with the keys ``command``,
``context``, ``bound``, ``window``, ``verdict``, ``witnesses`` and
``caveats``; ``--json`` prints it as JSON, otherwise it is rendered as text.

Exit codes: 0 success, 1 a verification returned false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import centralizer as cz
from .classify import (
    CentralElementError,
    TableViolation,
    classify,
    comfab_terms,
    dp6_table_check,
    no_nonzero_eigenvalue_report,
    verify_comfab,
    verify_shared_nil,
)
from .embed import casimir, casimir_commutes, embed_element, embedding_by_name, relation_residuals
from .field import parse_rational
from .parser import ElaborationError, ParseError, parse_element, parse_poly, to_text
from .series import WindowExhausted, ring_by_name, series_mul
from .weyl import WeylLikeElement, commutator as weyl_commutator, mul as weyl_mul

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- context handling ------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def _context(args) -> tuple[str, object, str]:
    """(parser context name, parameter, human-readable label)."""
    ring = getattr(args, "ring", None)
    if ring:
        param = args.lam
        if ring in ("B", "E") and param is None:
            raise UsageError(f"ring {ring} needs --lambda")
        label = ring if param is None else f"{ring}(lambda={param})"
        return ring, param, label
    algebra = getattr(args, "algebra", None) or "weyl"
    if algebra == "qplane":
        param = args.lam if args.lam is not None else Fraction(2)
        return algebra, param, f"qplane(lambda={param})"
    if algebra == "qweyl":
        param = args.mu if args.mu is not None else Fraction(3)
        return algebra, param, f"qweyl(mu={param})"
    return "weyl", None, "weyl"


def _element(args, text: str):
    name, param, _ = _context(args)
    return parse_element(text, name, param)


def _report(args, command: str, verdict, witnesses=(), caveats=(), *, bound=None, window=None, extra=None):
    try:
        label = _context(args)[2]
    except UsageError:
        label = None
    rep = {
        "command": command,
        "context": label,
        "bound": bound,
        "window": window,
        "verdict": verdict,
        "witnesses": list(witnesses),
        "caveats": list(caveats),
    }
    if extra:
        rep.update(extra)
    return rep


def _emit(rep: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=False, ensure_ascii=False))
        return
    head = f"{rep['command']} [{rep['context']}]" if rep["context"] else rep["command"]
    limits = []
    if rep["bound"] is not None:
        limits.append(f"bound N={rep['bound']}")
    if rep["window"] is not None:
        limits.append(f"window T={rep['window']}")
    if limits:
        head += " " + ", ".join(limits)
    print(head)
    print(f"verdict: {rep['verdict']}")
    for w in rep["witnesses"]:
        print(f"  witness: {w}")
    for c in rep["caveats"]:
        print(f"  caveat: {c}")


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for this command")


# -- commands --------------------------------------------------------------


def cmd_classify(args):
    a = _element(args, args.expr)
    if not isinstance(a, WeylLikeElement):
        raise UsageError("classify works on presented algebras (--algebra)")
    rep = classify(a, args.bound, args.n_max)
    witnesses = [{"eigenvalue": str(lam), "element": to_text(b)} for lam, b in rep.eigen_witnesses]
    extra = {"nil_profile": rep.nil_profile, "centralizer_dim": rep.centralizer_dim,
             "space_dim": rep.space_dim, "description": rep.dclass.description}
    return _report(args, "classify", str(rep.dclass), witnesses, rep.caveats, bound=args.bound,
                   extra=extra), EXIT_OK


def cmd_centralize(args):
    u = _element(args, args.expr)
    if isinstance(u, WeylLikeElement):
        cen = cz._weyl_centralizer(u, args.bound)
        return _report(args, "centralize", f"dimension {len(cen)}", [to_text(z) for z in cen],
                       [f"centralizer intersected with degree <= {args.bound}"], bound=args.bound), EXIT_OK
    if args.a0 is not None:
        a0 = _element(args, args.a0)
        if not (a0.is_exact and set(a0.coeffs) <= {0}):
            raise UsageError("--a0 must be a coefficient-field element")
        w = cz.centralize_deg0(u, a0.coeff(0), args.window)
        caveats = []
    else:
        if args.degree is None:
            raise UsageError("centralize needs --a0 (degree-0 input) or --degree (nonzero-degree input)")
        res = cz.centralize_posdeg_report(u, args.degree, args.window, args.ansatz)
        w = res.witness
        caveats = [f"coefficients searched among Laurent polynomials of degree <= {args.ansatz}"]
        if w is None:
            caveats.append(f"obstruction at {res.obstruction}")
            return _report(args, "centralize", "none", [], caveats, window=args.window), EXIT_FALSE
    witnesses = [{"element": str(w.element), "construction": str(w.construction),
                  "commutes_to_window": w.commutes_to_window}]
    verdict = "commutes" if w.commutes_to_window else "fails"
    code = EXIT_OK if w.commutes_to_window else EXIT_FALSE
    return _report(args, "centralize", verdict, witnesses, caveats, window=args.window), code


def _binary(args, command):
    a, b = _element(args, args.left), _element(args, args.right)
    if isinstance(a, WeylLikeElement):
        value = weyl_mul(a, b) if command == "mul" else weyl_commutator(a, b)
        return _report(args, command, to_text(value)), EXIT_OK
    if command == "mul":
        value = series_mul(a, b, args.window)
    else:
        value = series_mul(a, b, args.window) - series_mul(b, a, args.window)
    return _report(args, command, str(value.truncate(args.window)), window=args.window), EXIT_OK


def cmd_mul(args):
    return _binary(args, "mul")


def cmd_commutator(args):
    return _binary(args, "commutator")


def cmd_embed(args):
    spec = embedding_by_name(args.embedding, args.param)
    value = embed_element(spec, args.expr, args.window)
    return _report(args, "embed", str(value), window=args.window,
                   extra={"context": spec.name}), EXIT_OK


# -- verify sub-verbs ------------------------------------------------------


def _verdict(flag: bool) -> tuple[str, int]:
    return ("true", EXIT_OK) if flag else ("false", EXIT_FALSE)


def v_comfab(args):
    _need(args, "elem", "other", "poly")
    a, b, f = _element(args, args.elem), _element(args, args.other), parse_poly(args.poly)
    verdict, code = _verdict(verify_comfab(a, b, f))
    terms = [to_text(t) for t in comfab_terms(a, b, f)]
    return _report(args, "verify comfab", verdict, terms), code


def v_no_eigenvalue(args):
    _need(args, "elem", "poly")
    a, f = _element(args, args.elem), parse_poly(args.poly)
    res = no_nonzero_eigenvalue_report(a, f, args.bound)
    verdict, code = _verdict(res.holds)
    caveats = [f"evidence at bound N={args.bound}"]
    caveats += [f"unresolved characteristic factor: {fac}" for fac in res.logged_factors]
    return _report(args, "verify no-eigenvalue", verdict, [f"eigenvalue {lam}" for lam in res.eigenvalues],
                   caveats, bound=args.bound), code


def v_shared_nil(args):
    _need(args, "elem")
    a = _element(args, args.elem)
    if args.other is not None:
        b = _element(args, args.other)
    elif args.poly is not None:
        from .weyl import eval_poly

        b = eval_poly(parse_poly(args.poly), a)
    else:
        raise UsageError("shared-nil needs --other or --poly")
    verdict, code = _verdict(verify_shared_nil(a, b, args.bound, args.n_max or 3))
    return _report(args, "verify shared-nil", verdict, [to_text(b)], [f"evidence at bound N={args.bound}"],
                   bound=args.bound), code


def v_dp6(args):
    _need(args, "elem", "poly")
    a, f = _element(args, args.elem), parse_poly(args.poly)
    caveats = [f"evidence at bound N={args.bound}"]
    try:
        before, after = dp6_table_check(a, f, args.bound, caveats)
    except TableViolation as exc:
        return _report(args, "verify dp6-table", "false", [], caveats + [str(exc)], bound=args.bound), EXIT_FALSE
    return _report(args, "verify dp6-table", "true", [str(before), str(after)], caveats,
                   bound=args.bound), EXIT_OK


def v_ccc(args):
    _need(args, "elem", "other")
    a, b = _element(args, args.elem), _element(args, args.other)
    rep = cz.check_ccc_pair(a, b, args.bound, args.window, args.ansatz)
    verdict, code = _verdict(rep.consistent)
    witnesses = [{"commuting": rep.commuting, "bounded_centralizers_equal": rep.bounded_centralizers_equal,
                  "intersection_trivial": rep.intersection_trivial,
                  "centralizers_commutative": rep.centralizers_commutative}]
    return _report(args, "verify ccc-pair", verdict, witnesses, [rep.details], bound=args.bound,
                   window=None if isinstance(a, WeylLikeElement) else args.window), code


def v_centre(args):
    if not args.ring:
        raise UsageError("verify centre needs --ring")
    ring = ring_by_name(args.ring, args.lam)
    lo, hi = args.degrees
    slices = cz.centre_probe(ring, range(lo, hi + 1), args.window, min(args.ansatz, 2))
    summary = cz.centre_summary(slices)
    expected = {0: ring.fixed_field}
    verdict, code = _verdict(summary == expected)
    witnesses = [{"degree": s.degree, "field": s.field, "basis": [str(b) for b in s.basis]} for s in slices if s.dim]
    caveats = [f"coefficients searched among Laurent polynomials of degree <= {min(args.ansatz, 2)}",
               f"expected centre: {ring.fixed_field} in degree 0"]
    return _report(args, "verify centre", verdict, witnesses, caveats, window=args.window), code


def v_relations(args):
    if not args.embedding:
        raise UsageError("verify relations needs --embedding")
    spec = embedding_by_name(args.embedding, args.param)
    rows = relation_residuals(spec, args.window)
    ok = all(d.is_zero_within_window for _, _, d in rows)
    witnesses = [{"relation": f"{l} = {r}", "holds": d.is_zero_within_window} for l, r, d in rows]
    caveats = []
    if args.embedding.lower() in ("usl2", "uqsl2"):
        cas = casimir(args.embedding, args.param)
        central = casimir_commutes(cas, args.window)
        ok = ok and central
        witnesses.append({"casimir": cas.expression, "image": str(cas.image), "commutes": central})
    verdict, code = _verdict(ok)
    rep = _report(args, "verify relations", verdict, witnesses, caveats, window=args.window)
    rep["context"] = spec.name
    return rep, code


def v_eigenspace(args):
    _need(args, "elem", "p", "eigenvalue")
    if not args.ring:
        raise UsageError("eigenspace-factorization needs --ring")
    a, p = _element(args, args.elem), _element(args, args.p)
    lam = _element(args, args.eigenvalue)
    samples = [_element(args, s) for s in (args.sample or ["1"])]
    qs = [_element(args, q) for q in args.q] if args.q else None
    ok = cz.verify_eigenspace_factorization(a, p, lam.coeff(0), samples, args.window, qs)
    verdict, code = _verdict(ok)
    return _report(args, "verify eigenspace-factorization", verdict, [str(s) for s in samples],
                   window=args.window), code


def v_semisimple(args):
    _need(args, "elem", "other", "p", "eigenvalue", "eigenvalue2")
    a, b, p = _element(args, args.elem), _element(args, args.other), _element(args, args.p)
    lam, mu = _rational(args.eigenvalue), _rational(args.eigenvalue2)
    ok = cz.verify_semisimple_uniqueness(a, b, p, lam, mu, args.window)
    verdict, code = _verdict(ok)
    combo = a * mu - b * lam
    text = to_text(combo) if isinstance(combo, WeylLikeElement) else str(combo)
    return _report(args, "verify semisimple-uniqueness", verdict, [text],
                   window=None if isinstance(a, WeylLikeElement) else args.window), code


VERIFIERS = {
    "comfab": v_comfab,
    "no-eigenvalue": v_no_eigenvalue,
    "shared-nil": v_shared_nil,
    "dp6-table": v_dp6,
    "ccc-pair": v_ccc,
    "centre": v_centre,
    "relations": v_relations,
    "eigenspace-factorization": v_eigenspace,
    "semisimple-uniqueness": v_semisimple,
}


def cmd_verify(args):
    return VERIFIERS[args.check](args)


# -- argument parsing ------------------------------------------------------


def _degrees(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("degree range must look like LO:HI") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError("empty degree range")
    return lo, hi


def _common(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--algebra", choices=["weyl", "qplane", "qweyl"], help="presented algebra (default weyl)")
    grp.add_argument("--ring", choices=["A", "B", "C", "E", "R"], help="series ring")
    p.add_argument("--lambda", dest="lam", type=_rational, help="parameter of qplane or of rings B, E")
    p.add_argument("--mu", type=_rational, help="parameter of qweyl")
    p.add_argument("--bound", type=int, default=6, help="Bernstein degree bound N (default 6)")
    p.add_argument("--window", type=int, default=8, help="series window T (default 8)")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncalg", description="Exact computations in Weyl-type algebras "
                                     "and their series rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="bounded Dixmier-class verdict")
    _common(p)
    p.add_argument("expr")
    p.add_argument("--n-max", type=int, default=None, help="largest nil-space index (default 2N)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("centralize", help="commuting series (or bounded centralizer in an algebra)")
    _common(p)
    p.add_argument("expr")
    p.add_argument("--a0", help="constant term for a degree-0 input")
    p.add_argument("--degree", type=int, help="target degree for a nonzero-degree input")
    p.add_argument("--ansatz", type=int, default=3, help="coefficient ansatz degree bound")
    p.set_defaults(func=cmd_centralize)

    for name, func in (("mul", cmd_mul), ("commutator", cmd_commutator)):
        p = sub.add_parser(name, help=f"{name} of two elements")
        _common(p)
        p.add_argument("left")
        p.add_argument("right")
        p.set_defaults(func=func)

    p = sub.add_parser("embed", help="image of a word under an embedding")
    p.add_argument("expr")
    p.add_argument("--embedding", required=True)
    p.add_argument("--param", type=_rational, help="lambda, mu or q of the embedding")
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="identity checks")
    p.add_argument("check", choices=sorted(VERIFIERS))
    _common(p)
    p.add_argument("--elem")
    p.add_argument("--other")
    p.add_argument("--poly", help="polynomial in t, e.g. t^2+t")
    p.add_argument("--p", help="common eigenvector")
    p.add_argument("--eigenvalue")
    p.add_argument("--eigenvalue2")
    p.add_argument("--sample", action="append", help="centralizer sample (repeatable)")
    p.add_argument("--q", action="append", help="eigenvector sample (repeatable)")
    p.add_argument("--embedding")
    p.add_argument("--param", type=_rational)
    p.add_argument("--degrees", type=_degrees, default=(-3, 3))
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--ansatz", type=int, default=2)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    as_json = getattr(args, "json", False)
    try:
        rep, code = args.func(args)
    except (UsageError, ParseError, ElaborationError, WindowExhausted, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            kind = "parse error"
        elif isinstance(exc, (cz.PreconditionError, CentralElementError)):
            kind = "precondition"
        else:
            kind = "error"
        if as_json:
            command = args.command + (f" {args.check}" if getattr(args, "check", None) else "")
            print(json.dumps({"command": command, "error": kind, "message": str(exc)}))
        else:
            print(f"{kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep, as_json)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
