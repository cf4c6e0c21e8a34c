"""Command-line front end: JSON on stdout, short summaries on stderr.

Exit codes: 0 for a computed answer (including negative ones), 1 for internal
failures and failed checks, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import __version__
from .errors import (DomainMismatch, EvenValue, InseparableResidue, NotGeometric, ParseError, PfisterError,
                     UnsupportedField, WrongCharacteristic, ZeroInput)
from .fields import RationalFunctionField, Rationals, parse_element, parse_field
from .finite_field import FiniteField
from .hilbert import hilbert_symbol
from .lgp import divisor_witness_search, global_isotropy_status, isotropy_global, relevant_places
from .nice import ExtensionDescriptor, nice_check, nice_construct
from .quadforms import DiagForm, PfisterPresentation, expand, isotropy_local
from .recipe import recipe_samples, recipe_verify, rt_member
from .serialize import dumps
from .testforms import build_test_form, default_thetas, keyprop_check
from .valuations import (CompositeValuation, DegreePlace, DegreeValuation, PadicPlace, PadicValuation, PolyPlace,
                         PolyValuation, RealPlace, place_valuation, val_eval)

# errors that mean "the input does not fit the operation"
USAGE_ERRORS = (ParseError, ZeroInput, DomainMismatch, UnsupportedField, WrongCharacteristic, EvenValue,
                NotGeometric, InseparableResidue)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------------
# literals


_FORM_RE = re.compile(r"^\s*(diag|pf)\[(.*)\]\s*@\s*(\S+)\s*$")


def parse_form(text: str):
    """``diag[1,1,-1]@Q`` or ``pf[x,5,3]@Q(x)``: returns (form, presentation or None)."""
    m = _FORM_RE.match(text)
    if not m:
        raise ParseError(f"bad form literal {text!r}; expected diag[...]@F or pf[...]@F")
    kind, body, fdesc = m.groups()
    field = parse_field(fdesc)
    items = [s for s in body.split(",") if s.strip()]
    if not items:
        raise ParseError(f"empty form literal {text!r}")
    entries = tuple(parse_element(s.strip(), field) for s in items)
    if kind == "diag":
        return DiagForm(entries, field), None
    pres = PfisterPresentation(entries, field)
    return expand(pres), pres


def _split_top(body: str):
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _poly_of(text, field, var=None):
    if not isinstance(field, RationalFunctionField):
        raise ParseError(f"poly: places need a rational function field, not {field}")
    var = var or field.variables[-1]
    f = parse_element(text, field)
    num, den = field.to_polys(f, var)
    if den.degree != 0 or num.degree < 1:
        raise ParseError(f"{text!r} is not a nonconstant polynomial in {var}")
    return num.monic()


def _stage(token, field):
    """One rank-1 stage on ``field``."""
    if token.startswith("p:"):
        return PadicValuation(int(token[2:]))
    if token == "deg" or token.startswith("deg:"):
        var = token[4:] if token.startswith("deg:") else field.variables[-1]
        return DegreeValuation(field, var)
    if token.startswith("poly:"):
        g = _poly_of(token[5:], field)
        return PolyValuation(field, g.var, g)
    m = re.match(r"^([A-Za-z_][A-Za-z0-9_]*)@(-?\d+)$", token)
    if m:
        return PolyValuation.xadic(field, m.group(1), int(m.group(2)))
    raise ParseError(f"bad place token {token!r}")


def parse_place(text: str, field):
    """``real``, ``p:5``, ``deg``, ``poly:x^2+1``, ``x@0`` or ``comp[x@0, p:3]``."""
    text = text.strip()
    if text.startswith("comp[") and text.endswith("]"):
        stages, R = [], field
        for tok in _split_top(text[5:-1]):
            st = _stage(tok, R)
            stages.append(st)
            R = st.residue_field
        return CompositeValuation(stages)
    if isinstance(field, Rationals):
        if text == "real":
            return RealPlace()
        if text.startswith("p:"):
            try:
                return PadicPlace(int(text[2:]))
            except ValueError as exc:
                raise ParseError(f"bad prime in {text!r}") from exc
        raise ParseError(f"bad place {text!r} for Q")
    if isinstance(field, RationalFunctionField) and len(field.variables) == 1:
        if text == "deg":
            return DegreePlace(field.variables[0])
        if text.startswith("poly:"):
            return PolyPlace(_poly_of(text[5:], field))
    if isinstance(field, RationalFunctionField):
        return _stage(text, field)
    raise ParseError(f"bad place {text!r} for {field}")


def _where(place, field):
    if isinstance(place, (PolyPlace, DegreePlace)):
        return place_valuation(place, field)
    return place


# ----------------------------------------------------------------------
# subcommands


def _field(args, default="Q"):
    return parse_field(args.field or default)


def cmd_isotropy(args):
    q, pres = parse_form(args.form)
    inputs = {"form": str(q), "presentation": str(pres) if pres else None, "place": args.place}
    if args.place:
        where = _where(parse_place(args.place, q.field), q.field)
        v = isotropy_local(q, where)
    elif isinstance(q.field, FiniteField):
        v = isotropy_local(q, q.field)
    else:
        v = isotropy_global(q, height_bound=args.height_bound)
    return v.status, {"witness": v.witness, **v.certificate, "reason": v.reason}, inputs


def cmd_hilbert(args):
    field = _field(args)
    a, b = parse_element(args.a, field), parse_element(args.b, field)
    if not args.place:
        raise UsageError("hilbert needs --place")
    pl = parse_place(args.place, field)
    s = hilbert_symbol(a, b, pl, field)
    return s, {"place": pl, "symbol": s}, {"a": a, "b": b, "field": str(field), "place": args.place}


def cmd_lgp_verify(args):
    q, pres = parse_form(args.form)
    field = q.field
    inputs = {"form": str(q), "presentation": str(pres) if pres else None}
    if isinstance(field, Rationals) or (isinstance(field, RationalFunctionField) and len(field.variables) == 1
                                        and isinstance(field.base, FiniteField)):
        iso, failing, table = global_isotropy_status(q.coeffs, field)
        cert = {"relevant_places": relevant_places(q), "table": table, "failing_place": failing}
        return ("isotropic" if iso else "anisotropic"), cert, inputs
    if pres is None:
        raise UsageError(f"over {field} lgp-verify takes a pf[...] presentation and runs the divisor search")
    w, verdict = divisor_witness_search(pres, precision=args.precision)
    return verdict.status, {"divisor": w, "verdict": verdict}, inputs


def cmd_nice_check(args):
    field = _field(args)
    a1, a0 = parse_element(args.a1, field), parse_element(args.a0, field)
    cert = nice_check(a1, a0, field)
    return cert.nice, cert, {"a1": a1, "a0": a0, "field": str(field)}


def _extension(args, base):
    if not args.ext:
        return ExtensionDescriptor.trivial(base)
    if isinstance(base, Rationals):
        E = parse_field("Q(y)")
    else:
        E = RationalFunctionField(base.base, list(base.variables) + ["y"])
    f = parse_element(args.ext, E)
    num, den = E.to_polys(f, "y")
    if den.degree != 0:
        raise ParseError(f"{args.ext!r} is not a polynomial in y")
    return ExtensionDescriptor(base, num.monic())


def cmd_nice_construct(args):
    base = _field(args)
    ext = _extension(args, base)
    P = tuple(parse_place(s, base) for s in _split_top(args.P or ""))
    res = nice_construct(ext, P)
    inputs = {"field": str(base), "extension": ext.label, "P": [pl.label() for pl in P]}
    return True, res, inputs


def _test_form_inputs(args):
    K = _field(args, "Q(t2)(x)")
    w = parse_place(args.place or "x@0", K)
    if not isinstance(w, (PolyValuation, DegreeValuation)):
        raise UsageError("test forms need a place of the last variable, e.g. x@0 or poly:x^2+1")
    a_d = parse_element(args.ad or str(w.uniformizer), K)
    return K, w, a_d


def cmd_testform(args):
    K, w, a_d = _test_form_inputs(args)
    spec = build_test_form(w, a_d, attempts=args.attempts, seed=args.seed, precision=args.precision)
    inputs = {"field": str(K), "place": str(w), "a_d": a_d}
    return spec.verdict.status if hasattr(spec.verdict, "status") else spec.verdict, spec, inputs


def cmd_keyprop(args):
    K, w, a_d = _test_form_inputs(args)
    spec = build_test_form(w, a_d, attempts=args.attempts, seed=args.seed, precision=args.precision)
    if args.tau:
        tau = parse_element(args.tau, K)
    else:
        tau = w.uniformizer ** ((val_eval(w, a_d) + 1) // 2)
    thetas = [parse_element(t, K) for t in args.theta] if args.theta else default_thetas(spec, seed=args.seed)
    rep = keyprop_check(spec, tau, thetas=thetas, seed=args.seed)
    inputs = {"field": str(K), "place": str(w), "a_d": a_d, "tau": tau}
    return rep.passed, {"report": rep, "test_form": spec}, inputs


def cmd_recipe(args):
    K = _field(args, "Q(x)")
    a_d = parse_element(args.ad or "x", K)
    var = K.variables[-1]
    if args.place:
        v = parse_place(args.place, K)
        v = _where(v, K)
    else:
        from .factor import irreducible_factors
        num, den = K.to_polys(a_d, var)
        facs = irreducible_factors(num) if num.degree else []
        if len(facs) != 1 or den.degree:
            raise UsageError("give --place when a_d is not a power of one irreducible polynomial")
        v = PolyValuation(K, var, facs[0])
    smp = recipe_samples(K, v.uniformizer, args.samples, seed=args.seed)
    res = recipe_verify(v, a_d, smp)
    return res.passed, res, {"field": str(K), "place": str(v), "a_d": a_d, "samples": args.samples}


def cmd_rt(args):
    K = _field(args, "Q(x1,x2)")
    f = parse_element(args.f, K)
    res = rt_member(f)
    return res.member, res.certificate, {"f": f, "field": str(K)}


def cmd_selftest(args):
    from .selftest import run_selftest
    only = {int(s) for s in args.only.split(",")} if args.only else None
    report = run_selftest(args.seed, only=only)
    return report["all_passed"], report, {"seed": args.seed, "only": sorted(only) if only else None}


COMMANDS = {
    "isotropy": cmd_isotropy, "hilbert": cmd_hilbert, "lgp-verify": cmd_lgp_verify,
    "nice-check": cmd_nice_check, "nice-construct": cmd_nice_construct, "testform": cmd_testform,
    "keyprop": cmd_keyprop, "recipe": cmd_recipe, "rt": cmd_rt, "selftest": cmd_selftest,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--place", help="real, p:5, deg, poly:x^2+1, x@0 or comp[x@0, p:3]")
    common.add_argument("--field", help="Q, F5, Q(x), F5(t2)(x), ...")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--height-bound", type=int, default=200, help="witness search height (default 200)")
    common.add_argument("--precision", type=int, default=16, help="truncation order (default 16)")
    common.add_argument("--attempts", type=int, default=50, help="test-form attempts (default 50)")
    common.add_argument("--json-out", help="also write the JSON report to this path")

    parser = _Parser(prog="pfisterkit", description="Pfister-form isotropy and definability toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("isotropy", parents=[common], help="local or global isotropy of a form")
    p.add_argument("form")
    p = sub.add_parser("hilbert", parents=[common], help="Hilbert symbol (a, b) at a place")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("lgp-verify", parents=[common], help="per-place verdict table")
    p.add_argument("form")
    p = sub.add_parser("nice-check", parents=[common], help="is (a1, a0) nice")
    p.add_argument("a1")
    p.add_argument("a0")
    p = sub.add_parser("nice-construct", parents=[common], help="nice pair anisotropic over an extension")
    p.add_argument("--ext", help="minimal polynomial in y, e.g. y^2+1")
    p.add_argument("--P", help="comma-separated places where the pair must be units")
    for name in ("testform", "keyprop"):
        p = sub.add_parser(name, parents=[common], help="build a test form" if name == "testform"
                           else "check the key property on theta samples")
        p.add_argument("--ad", help="the last slot a_d (odd value at the place)")
        if name == "keyprop":
            p.add_argument("--tau", help="tau with w(tau^2) > w(a_d); default uniformizer^((w(a_d)+1)/2)")
            p.add_argument("--theta", action="append", help="a theta sample (repeatable)")
    p = sub.add_parser("recipe", parents=[common], help="ideal / stabilizer recipe against the valuation ring")
    p.add_argument("--ad", help="a_d with odd value at the place")
    p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("rt", parents=[common], help="membership in R_T with a witness valuation")
    p.add_argument("f")
    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def _emit(payload, args):
    text = dumps(payload)
    print(text)
    if args is not None and getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")


def _unknown_flag(parser, argv):
    """First ``--flag`` the chosen subcommand does not know, so the message names it."""
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    if not argv or argv[0] not in sub.choices:
        return None
    known = set(sub.choices[argv[0]]._option_string_actions)
    for tok in argv[1:]:
        if tok.startswith("--") and tok.split("=", 1)[0] not in known:
            return tok
    return None


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        bad = _unknown_flag(parser, argv)
        if bad is not None:
            raise UsageError(f"unrecognized argument {bad}")
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    inputs = {"argv": argv}
    try:
        verdict, cert, extra = COMMANDS[args.command](args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit({"command": args.command, "error": {"type": type(exc).__name__, "message": str(exc)},
               "inputs": inputs, "verdict": None, "version": __version__}, args)
        return 2
    except PfisterError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        err = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "sample", None) is not None:
            err["sample"] = exc.sample
        _emit({"command": args.command, "error": err, "inputs": inputs, "verdict": None,
               "version": __version__}, args)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    inputs.update(extra)
    _emit({"command": args.command, "verdict": verdict, "certificate": cert, "inputs": inputs,
           "version": __version__}, args)
    print(f"{args.command}: verdict {verdict}", file=sys.stderr)
    if args.command == "selftest" and not verdict:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
