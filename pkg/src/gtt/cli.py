"""Command-line driver.

Exit codes: 0 success / yes, 1 negative answer, 2 input error, 3 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import jsonio
from .errors import DepthExceeded, GttError
from .expr import CatExpr, Indet, Turnstile
from .syntax import (ParseError, Parser, SourceFile, parse, parse_expr,
                     parse_term, show, show_file, show_term)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

PRELUDE = "obj a;\nobj b;\nobj c;\n"


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    try:
        return int(os.environ.get("GTT_SEED", "0"))
    except ValueError:
        return 0


def _load(args) -> tuple[SourceFile, str]:
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _Fail(EXIT_INPUT, "%s: %s" % (args.file, exc.strerror)) from None
        return _parse_file(text, args.file), args.file
    return _parse_file(PRELUDE, "<prelude>"), "<prelude>"


def _parse_file(text, origin):
    try:
        return parse(text)
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, "%s:%s: error: %s" % (origin, exc.span, exc)) from None


def _expr(text: str, sf: SourceFile) -> CatExpr:
    try:
        return parse_expr(text, sf)
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, "<arg>:%s: error: %s" % (exc.span, exc)) from None


def _term(text: str, sf: SourceFile):
    try:
        return parse_term(text, sf)
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, "<arg>:%s: error: %s" % (exc.span, exc)) from None


class _Out:
    def __init__(self, args):
        self.json = args.json
        self.canonical = args.canonical

    def expr(self, e):
        return jsonio.expr_to_json(e) if self.json else show(e, terse=not self.canonical)

    def term(self, s):
        return jsonio.term_to_json(s) if self.json else show_term(s, terse=not self.canonical)

    def emit(self, command: str, ok: bool, result, text: str):
        if self.json:
            doc = jsonio.document("result", command=command, ok=ok, result=result)
            jsonio.validate(doc)
            print(json.dumps(doc, sort_keys=True))
        else:
            print(text)


# ---------------------------------------------------------------------------
# commands

def _decl_exprs(d):
    for attr in ("source", "target", "type", "expr", "lo", "hi"):
        e = getattr(d, attr, None)
        if isinstance(e, CatExpr):
            yield e


def cmd_check(args, out):
    from .gencat import well_formed
    sf, origin = _load(args)
    sig = sf.signature
    problems = []
    for d in sf.declarations:
        for e in _decl_exprs(d):
            if not well_formed(e, sig):
                problems.append("%s:%s: ill-formed element %s" % (origin, d.span, show(e)))
    summary = {"declarations": len(sf.declarations), "objects": len(sig.objects),
               "generators": len(sig.generators) - len(sig.objects),
               "terms": len(sf.terms), "problems": problems}
    text = "\n".join(problems) if problems else "ok: %d declarations" % len(sf.declarations)
    out.emit("check", not problems, summary, text)
    return EXIT_INPUT if problems else EXIT_OK


def cmd_normalize(args, out):
    from .lam import normalize_term
    from .nbe import Engine
    sf, _ = _load(args)
    if args.term:
        s = _term(args.item, sf)
        nf = normalize_term(s, sf.signature)
        out.emit("normalize", True, out.term(nf), out.term(nf))
    else:
        e = _expr(args.item, sf)
        nf = Engine(sf.signature).normalize(e)
        out.emit("normalize", True, out.expr(nf), out.expr(nf))
    return EXIT_OK


def cmd_eq(args, out):
    from .iccc import equal
    from .lam import term_equal
    sf, _ = _load(args)
    if args.term:
        same = term_equal(_term(args.left, sf), _term(args.right, sf), sf.signature)
    else:
        same = equal(_expr(args.left, sf), _expr(args.right, sf), sf.signature)
    out.emit("eq", same, same, "equal" if same else "not equal")
    return EXIT_OK if same else EXIT_NO


def _indet(name: str, args, sf: SourceFile) -> Indet:
    sig = sf.signature
    if name in sig.indets:
        return sig.indets[name]
    tyname = args.type or (sig.objects[0] if sig.objects else None)
    if tyname is None:
        raise _Fail(EXIT_INPUT, "no type for the indeterminate %r; pass --type" % name)
    p = Parser("indet %s : %s;" % (name, tyname), sig, sf.types, sf.terms)
    try:
        p.parse_decl()
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, "<arg>: error: %s" % exc) from None
    return sig.indets[name]


def cmd_kappa(args, out):
    from .poly import kappa, lambda_x
    sf, _ = _load(args)
    x = _indet(args.var, args, sf)
    phi = _expr(args.poly, sf)
    if args.command == "kappa":
        r = kappa(x, phi, sf.signature)
    else:
        r = lambda_x(x, phi, sf.signature)
    out.emit(args.command, True, out.expr(r), out.expr(r))
    return EXIT_OK


def cmd_to_lam(args, out):
    from .correspond import to_symbol
    sf, _ = _load(args)
    sym = to_symbol(_expr(args.item, sf), sf.signature)
    res = {"var": out.term(sym.var), "body": out.term(sym.body)} if out.json else None
    out.emit("to-lam", True, res, "<%s | %s>" % (out.term(sym.var), out.term(sym.body)))
    return EXIT_OK


def cmd_to_cat(args, out):
    from .correspond import from_symbol, make_symbol
    from .lam import free_vars
    from .terms import Var
    sf, _ = _load(args)
    sig = sf.signature
    body = _term(args.item, sf)
    if args.var:
        v = _term(args.var, sf)
        if not isinstance(v, Var):
            raise _Fail(EXIT_INPUT, "--var must be a variable v(T, n)")
    else:
        fv = sorted(free_vars(body), key=repr)
        if len(fv) > 1:
            raise _Fail(EXIT_INPUT, "term has %d free variables; pass --var" % len(fv))
        from .expr import Top
        v = fv[0] if fv else Var(Top, 1)
    e = from_symbol(make_symbol(v, body, sig), sig)
    out.emit("to-cat", True, out.expr(e), out.expr(e))
    return EXIT_OK


def cmd_roundtrip(args, out):
    from .correspond import check_triangles
    from .lam import LambdaCalculus
    from .signature import simple_signature
    if args.file:
        sig = _load(args)[0].signature
    else:
        sig = simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")])
    rep = check_triangles(LambdaCalculus(sig), sig, samples=args.samples, seed=args.seed)
    text = "types %d, terms %d, symbols %d, naturality %d: %s" % (
        rep.types, rep.terms, rep.symbols, rep.naturality,
        "ok" if rep.ok else "%d failures" % len(rep.failures))
    out.emit("roundtrip", rep.ok, rep.as_dict(), text)
    return EXIT_OK if rep.ok else EXIT_INTERNAL


def cmd_inhabit(args, out):
    from .dedsys import DeductiveSystem, inhabit
    sf, _ = _load(args)
    goal = _expr(args.goal, sf)
    if not isinstance(goal, Turnstile):
        raise _Fail(EXIT_INPUT, "a goal has the form p |- q")
    ds = DeductiveSystem(sf.signature)
    try:
        w = inhabit(goal.left, goal.right, ds, args.depth)
    except DepthExceeded as exc:
        out.emit("inhabit", False, None, "no witness within depth %d" % args.depth)
        del exc
        return EXIT_NO
    if w is None:
        out.emit("inhabit", False, None, "not inhabited")
        return EXIT_NO
    out.emit("inhabit", True, out.expr(w.expr), out.expr(w.expr))
    return EXIT_OK


def cmd_selftest(args, out):
    results = run_selftest(args.samples, args.seed)
    ok = all(r[1] for r in results)
    lines = ["%s %s (%s)" % ("PASS" if good else "FAIL", name, detail)
             for name, good, detail in results]
    out.emit("selftest", ok, [{"check": n, "ok": g, "detail": d} for n, g, d in results],
             "\n".join(lines))
    return EXIT_OK if ok else EXIT_INTERNAL


def run_selftest(samples: int = 100, seed: int = 0) -> list[tuple[str, bool, str]]:
    """A compact run of the property suite: (name, ok, detail) per check."""
    from .correspond import check_triangles
    from .lam import LambdaCalculus
    from .laws import (check_decider_agreement, check_deduction,
                       check_functional_completeness, check_iccc_laws,
                       check_lambda_laws)
    from .signature import simple_signature
    from .syntax import random_file
    sig2 = simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")], [("k", "b")])
    sig3 = simple_signature("abc", [("f", "a", "b"), ("g", "b", "c"), ("h", "c", "a")])
    lam = LambdaCalculus(sig2)
    out = []

    def run(name, fn):
        t = time.perf_counter()
        try:
            bad = fn()
            out.append((name, not bad, "%d failures, %.2fs" % (len(bad), time.perf_counter() - t)))
        except Exception as exc:  # reported, not raised
            out.append((name, False, "%s: %s" % (type(exc).__name__, exc)))

    run("iccc laws", lambda: check_iccc_laws(sig3, samples, seed))
    run("lambda laws", lambda: check_lambda_laws(lam, samples, seed))
    run("triangles", lambda: check_triangles(lam, sig2, max(1, samples // 5), seed).failures)
    run("deduction theorem",
        lambda: check_deduction(simple_signature("abc"), max(1, samples // 5), seed)[0])
    run("functional completeness",
        lambda: check_functional_completeness(sig2, max(1, samples // 3), seed))
    run("decider agreement", lambda: check_decider_agreement(lam, samples, seed))

    def syntax_roundtrip():
        bad = []
        rng = random.Random(seed)
        for _ in range(max(1, samples // 5)):
            sf = random_file(rng)
            if parse(show_file(sf)) != sf:
                bad.append(show_file(sf))
        return bad
    run("parser round trip", syntax_roundtrip)

    def json_schema():
        import jsonschema
        bad = []
        rng = random.Random(seed)
        from . import randgen
        for _ in range(max(1, samples // 5)):
            e, _, _ = randgen.random_arrow(rng, sig2, 6)
            doc = jsonio.encode(e)
            try:
                jsonio.validate(doc)
            except jsonschema.ValidationError as exc:
                bad.append(str(exc))
            if jsonio.expr_from_json(doc["expr"]) != e:
                bad.append(repr(e))
        return bad
    run("json schema", json_schema)
    return out


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--file", help="a .gtt file declaring the signature")
    common.add_argument("--json", action="store_true", help="emit the JSON result schema")
    common.add_argument("--canonical", action="store_true",
                        help="print projections and evaluations with subscripts")
    p = argparse.ArgumentParser(prog="gtt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="parse and validate a file")
    s.add_argument("path", nargs="?")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("normalize", parents=[common], help="print a normal form")
    s.add_argument("item")
    s.add_argument("--term", action="store_true", help="read a lambda term")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("eq", parents=[common], help="exit 0 iff two items are equal")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--term", action="store_true")
    s.set_defaults(fn=cmd_eq)

    for name in ("kappa", "abstract"):
        s = sub.add_parser(name, parents=[common],
                           help="kappa_x of a polynomial" if name == "kappa" else "lambda_x of a polynomial")
        s.add_argument("var")
        s.add_argument("poly")
        s.add_argument("--type", help="type of an undeclared indeterminate")
        s.set_defaults(fn=cmd_kappa)

    s = sub.add_parser("to-lam", parents=[common], help="element to symbol")
    s.add_argument("item")
    s.set_defaults(fn=cmd_to_lam)

    s = sub.add_parser("to-cat", parents=[common], help="bulletin term to element")
    s.add_argument("item")
    s.add_argument("--var", help="the symbol's variable, v(T, n)")
    s.set_defaults(fn=cmd_to_cat)

    s = sub.add_parser("roundtrip", parents=[common], help="run the triangle checks")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(fn=cmd_roundtrip)

    s = sub.add_parser("inhabit", parents=[common], help="proof search for p |- q")
    s.add_argument("goal")
    s.add_argument("--depth", type=int, default=12)
    s.set_defaults(fn=cmd_inhabit)

    s = sub.add_parser("selftest", parents=[common], help="run the property suite")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is None:
        args.seed = default_seed()
    if args.command == "check" and args.path:
        args.file = args.path
    out = _Out(args)
    try:
        return args.fn(args, out)
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except GttError as exc:
        where = "<arg>:%s: " % exc.span if exc.span else ""
        print("%serror: %s" % (where, exc), file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a kernel bug
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
