"""denv: classify maps, print family generators, expand linearizers.

Reports are deterministic: the JSON payload contains no wall-clock data
(timings go to the human-readable output only), keys are sorted, and the
solver itself is exact, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional, Tuple

from . import __version__
from .algebra.ratfun import RatFun, ratfun_to_str
from .algebra.scalar import Scalar, validate_radicand
from .families import LattesParams, chebyshev, lattes, monomial
from .jets import jet_compose, jet_of_map
from .koenigs import koenigs_series, linearization_residual
from .solver import ClassificationReport, SolveCaps, classify

FIELDS = ("rational", "gauss")


class ExprError(ValueError):
    """Syntax or semantics error in an input expression, with position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


# -- expression parser --------------------------------------------------------------


_BP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY_BP = 30


def _tokenize(src: str) -> List[Tuple[str, object, int]]:
    toks: List[Tuple[str, object, int]] = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and src[j].isalpha():
                j += 1
            name = src[i:j]
            if name not in ("x", "i"):
                raise ExprError(f"unknown name '{name}'", i)
            toks.append((name, name, i))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n))
    return toks


def parse_ratfun(src: str, field: str = "rational") -> RatFun:
    """Parse `x`, integers, `i` (gauss field only), + - * / ^ and parens.

    `^` takes an integer literal exponent, negative allowed, optionally
    parenthesized.  Errors carry the offending position.
    """
    toks = _tokenize(src)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def advance():
        tok = toks[pos[0]]
        pos[0] += 1
        return tok

    def expect(kind: str):
        tok = advance()
        if tok[0] != kind:
            raise ExprError(f"expected '{kind}'", tok[2])
        return tok

    def parse_exponent() -> int:
        tok = advance()
        if tok[0] == "(":
            inner = parse_exponent()
            expect(")")
            return inner
        sign = 1
        if tok[0] in ("+", "-"):
            sign = -1 if tok[0] == "-" else 1
            tok = advance()
        if tok[0] != "int":
            raise ExprError("exponent must be an integer literal", tok[2])
        return sign * tok[1]

    def parse_expr(min_bp: int) -> RatFun:
        tok = advance()
        kind, value, at = tok
        if kind == "-":
            node = -parse_expr(_UNARY_BP)
        elif kind == "+":
            node = parse_expr(_UNARY_BP)
        elif kind == "int":
            node = RatFun.constant(value)
        elif kind == "x":
            node = RatFun.x()
        elif kind == "i":
            if field != "gauss":
                raise ExprError("'i' needs --field gauss", at)
            node = RatFun.constant(Scalar(0, 1, -1))
        elif kind == "(":
            node = parse_expr(0)
            expect(")")
        else:
            raise ExprError("expected a value", at)
        while True:
            op, _, opat = peek()
            if op not in _BP or _BP[op] < min_bp:
                return node
            advance()
            try:
                if op == "^":
                    node = node ** parse_exponent()
                else:
                    rhs = parse_expr(_BP[op] + 1)
                    if op == "+":
                        node = node + rhs
                    elif op == "-":
                        node = node - rhs
                    elif op == "*":
                        node = node * rhs
                    else:
                        node = node / rhs
            except ZeroDivisionError:
                raise ExprError("division by the zero polynomial", opat)

    out = parse_expr(0)
    tok = peek()
    if tok[0] != "end":
        raise ExprError("trailing input", tok[2])
    return out


def _parse_field(tag: str) -> str:
    if tag in FIELDS:
        return tag
    if tag.startswith("sqrt:"):
        try:
            validate_radicand(int(tag[5:]))
        except ValueError as e:
            raise ValueError(f"bad field tag '{tag}': {e}")
        return tag
    raise ValueError(f"bad field tag '{tag}' (rational, gauss, or sqrt:<d>)")


def _parse_point(src: str, field: str) -> Scalar:
    value = parse_ratfun(src, field)
    if not value.is_constant():
        raise ExprError("expected a constant point", 0)
    return value.constant_value()


# -- report assembly ----------------------------------------------------------------


def _caps_json(caps: SolveCaps) -> dict:
    return {
        "max_den_deg": caps.max_den_deg,
        "extra_num_deg": caps.extra_num_deg,
        "pole_mult_g2": caps.pole_mult_g2,
        "pole_mult_g3": caps.pole_mult_g3,
        "n_range": caps.n_range,
        "support_cap": caps.support_cap,
        "iteration_cap": caps.iteration_cap,
    }


def report_json(rep: ClassificationReport, src: str, field: str) -> dict:
    """The stable machine-readable payload for one classification."""
    evidence = dict(rep.evidence)
    if rep.g2_reason:
        evidence["g2_reason"] = rep.g2_reason
    if rep.g3_reason:
        evidence["g3_reason"] = rep.g3_reason

    def space_json(space):
        if space is None:
            return {"particular": None, "kernel": []}
        return {
            "particular": ratfun_to_str(space.particular),
            "kernel": [ratfun_to_str(h) for h in space.kernel_basis],
        }

    return {
        "version": __version__,
        "input": src,
        "field": field,
        "caps": _caps_json(rep.caps),
        "orders": {
            "g1": ({"n": rep.g1[0], "eta": ratfun_to_str(rep.g1[1])}
                   if rep.g1 else None),
            "g2": space_json(rep.g2),
            "g3": space_json(rep.g3),
        },
        "verdict": rep.verdict,
        "minimal_order": rep.minimal_order,
        "family_guess": rep.family_guess,
        "evidence": evidence,
        "timings_ms": {},
    }


def _print_json(payload: dict):
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _human_report(rep: ClassificationReport, elapsed_ms: float):
    print(f"map: {ratfun_to_str(rep.map)}  (degree {rep.degree})")
    if rep.minimal_order is None:
        print(f"verdict: {rep.verdict}")
    else:
        print(f"verdict: {rep.verdict} (minimal order {rep.minimal_order})")
    if rep.g1:
        n, eta = rep.g1
        print(f"g1: n = {n}, eta = {ratfun_to_str(eta)}")
    else:
        print("g1: none within the n range")
    for label, space, reason in (("g2", rep.g2, rep.g2_reason),
                                 ("g3", rep.g3, rep.g3_reason)):
        coeff = "mu" if label == "g2" else "nu"
        if space is None:
            print(f"{label}: none ({reason})")
        else:
            print(f"{label}: {coeff} = {ratfun_to_str(space.particular)}"
                  f"  (kernel dimension {space.dimension()})")
    print(f"family guess: {rep.family_guess}")
    for key in sorted(rep.evidence):
        print(f"  {key}: {rep.evidence[key]}")
    print(f"time: {elapsed_ms:.0f} ms")


# -- commands -----------------------------------------------------------------------


def cmd_classify(args) -> int:
    field = _parse_field(args.field)
    r = parse_ratfun(args.map, field)
    caps = SolveCaps(
        max_den_deg=args.max_den_deg,
        extra_num_deg=args.extra_num_deg,
        pole_mult_g2=args.pole_mult if args.pole_mult else 1,
        pole_mult_g3=args.pole_mult if args.pole_mult else 2,
        n_range=args.n_range,
        support_cap=args.orbit_cap,
    )
    t0 = time.perf_counter()
    rep = classify(r, caps)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if args.json:
        _print_json(report_json(rep, args.map, field))
    else:
        _human_report(rep, elapsed)
    return 0


def cmd_family(args) -> int:
    if args.which == "monomial":
        if args.k is None:
            raise ValueError("monomial needs an exponent")
        out = monomial(args.k)
    elif args.which == "chebyshev":
        if args.k is None:
            raise ValueError("chebyshev needs a degree")
        out = chebyshev(args.k, args.normalization)
    else:
        if args.k is None:
            raise ValueError("lattes needs --k")
        params = LattesParams(Fraction(args.g2), Fraction(args.g3), args.k)
        out = lattes(params, cap=args.cap)
    if args.json:
        _print_json({"version": __version__, "family": args.which,
                     "map": ratfun_to_str(out), "degree": out.degree()})
    else:
        print(ratfun_to_str(out))
    return 0


def cmd_koenigs(args) -> int:
    field = _parse_field(args.field)
    r = parse_ratfun(args.map, field)
    point = _parse_point(args.point, field)
    ks = koenigs_series(r, point, order=args.order, precision=args.precision)
    res = linearization_residual(r, ks)
    coeffs = [ks.coefficient(k) for k in range(1, ks.order + 1)]
    if args.json:
        _print_json({
            "version": __version__,
            "input": args.map,
            "point": args.point,
            "order": ks.order,
            "exact": ks.exact,
            "multiplier": str(ks.multiplier),
            "coefficients": [str(c) for c in coeffs],
            "residual": str(res),
        })
    else:
        print(f"base point: {ks.base_point}  multiplier: {ks.multiplier}"
              f"  ({'exact' if ks.exact else f'{ks.precision}-bit numeric'})")
        print("coefficients: " + ", ".join(str(c) for c in coeffs))
        print(f"residual: {res}")
    return 0


def cmd_jets(args) -> int:
    field = _parse_field(args.field)
    point = _parse_point(args.at, field)
    maps = [parse_ratfun(src, field) for src in args.exprs]
    if args.action == "of":
        if len(maps) != 1:
            raise ValueError("jets of takes exactly one expression")
        jet = jet_of_map(maps[0], point, args.order)
    else:
        if len(maps) != 2:
            raise ValueError("jets compose takes exactly two expressions")
        inner = jet_of_map(maps[1], point, args.order)
        outer = jet_of_map(maps[0], inner.target, args.order)
        jet = jet_compose(inner, outer)
    if args.json:
        _print_json({"version": __version__,
                     "source": str(jet.source), "target": str(jet.target),
                     "derivatives": [str(v) for v in jet.derivs]})
    else:
        print(repr(jet))
    return 0


# -- argument plumbing --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # bad parameters are an exit-3 condition, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(3)


def _add_field_flag(p):
    p.add_argument("--field", default="rational",
                   help="rational, gauss, or sqrt:<d>")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="denv",
                  description="envelope classification of rational maps")
    top.add_argument("--version", action="version",
                     version=f"denv {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="find the lowest-order equation")
    pc.add_argument("map", help="rational expression in x")
    _add_field_flag(pc)
    pc.add_argument("--max-den-deg", type=int, default=24, dest="max_den_deg")
    pc.add_argument("--extra-num-deg", type=int, default=None,
                    dest="extra_num_deg")
    pc.add_argument("--pole-mult", type=int, default=None, dest="pole_mult",
                    help="override pole multiplicity cap for both orders")
    pc.add_argument("--orbit-cap", type=int, default=64, dest="orbit_cap")
    pc.add_argument("--n-range", type=int, default=6, dest="n_range")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_classify)

    pf = sub.add_parser("family", help="print a family generator")
    pf.add_argument("which", choices=["monomial", "chebyshev", "lattes"])
    pf.add_argument("k", type=int, nargs="?", default=None)
    pf.add_argument("--normalization", default="dilated",
                    choices=["classical", "dilated"])
    pf.add_argument("--g2", default="4")
    pf.add_argument("--g3", default="0")
    pf.add_argument("--k", type=int, dest="k_flag", default=None)
    pf.add_argument("--cap", type=int, default=5)
    pf.add_argument("--json", action="store_true")
    pf.set_defaults(func=cmd_family)

    pk = sub.add_parser("koenigs", help="linearizer series at a fixed point")
    pk.add_argument("map")
    pk.add_argument("--point", required=True)
    pk.add_argument("--order", type=int, default=32)
    pk.add_argument("--precision", type=int, default=128)
    _add_field_flag(pk)
    pk.add_argument("--json", action="store_true")
    pk.set_defaults(func=cmd_koenigs)

    pj = sub.add_parser("jets", help="jet algebra for scripting")
    pj.add_argument("action", choices=["of", "compose"])
    pj.add_argument("exprs", nargs="+")
    pj.add_argument("--at", required=True)
    pj.add_argument("--order", type=int, default=4)
    _add_field_flag(pj)
    pj.add_argument("--json", action="store_true")
    pj.set_defaults(func=cmd_jets)

    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k_flag", None) is not None:
        args.k = args.k_flag
    try:
        return args.func(args)
    except ExprError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (ValueError, ArithmeticError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
