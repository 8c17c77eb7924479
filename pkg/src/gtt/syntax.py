"""Text format for signatures, elements and terms.

Declarations::

    obj a;                 gen f : a -> b;        const k : T;
    indet x : T;           valid e;               order a <= b;
    type p = e;            term s = t;

Elements, loosest first: ``|-`` (right associative), ``/\\`` (left
associative), composition written ``.`` or by juxtaposition (left
associative), postfix ``*``.  Atoms are names, ``top``, ``id(e)``,
``pi[A, B]``, ``pi'[A, B]``, ``eps[A, B]``, ``<e, e>`` and parentheses.  A
bare ``pi``, ``pi'`` or ``eps`` takes its subscripts from the factor to its
right.

Terms: ``\\v(T, n). s``, ``s @ t``, ``name(A)``, ``star``, ``hole(T)``,
``v(T, n)``, ``pi(s)``, ``pi'(s)``, ``<s, t>``, constant and indeterminate
names.  The Unicode spellings ⊢ ∧ λ ⌜A⌝ ⊤ π π′ ε · ≀ ⟨ ⟩ → ≤ are accepted on
input and never printed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import GttError, ParseError
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge)
from .nbe import Engine
from .signature import Signature
from . import terms as T

RESERVED = frozenset("""obj gen const indet valid order type term top id pi pi'
eps star name hole v""".split())


@dataclass(frozen=True)
class Span:
    start: int
    end: int
    line: int
    col: int

    def __str__(self):
        return "%d:%d" % (self.line, self.col)


# ---------------------------------------------------------------------------
# declarations

@dataclass(frozen=True)
class ObjDecl:
    name: str
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class GenDecl:
    name: str
    source: CatExpr
    target: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ConstDecl:
    name: str
    type: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class IndetDecl:
    name: str
    type: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ValidDecl:
    expr: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class OrderDecl:
    lo: CatExpr
    hi: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class TypeDef:
    name: str
    expr: CatExpr
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class TermDef:
    name: str
    term: T.Term
    span: Span | None = field(default=None, compare=False)


@dataclass
class SourceFile:
    declarations: list = field(default_factory=list)
    signature: Signature = field(default_factory=Signature, compare=False)
    types: dict = field(default_factory=dict, compare=False)
    terms: dict = field(default_factory=dict, compare=False)

    def __eq__(self, other):
        return isinstance(other, SourceFile) and self.declarations == other.declarations


# ---------------------------------------------------------------------------
# lexer

_ALIASES = {"⊢": "|-", "∧": "/\\", "λ": "\\", "⊤": "top", "π′": "pi'", "π'": "pi'",
            "π": "pi", "ε": "eps", "·": ".", "∘": ".", "≀": "@", "⟨": "<", "⟩": ">",
            "→": "->", "≤": "<="}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<sym>\|-|/\\|->|<=|π′|π'|[⊢∧λ⊤πε·∘≀⟨⟩→≤⌜⌝.,;:=*@<>()\[\]\\])
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str          # 'sym', 'int', 'ident', 'eof'
    text: str
    span: Span


def tokenize(text: str) -> list[Tok]:
    out = []
    pos, line, lstart = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character %r" % text[pos],
                             Span(pos, pos + 1, line, pos - lstart + 1))
        kind = m.lastgroup
        s = m.group()
        span = Span(pos, m.end(), line, pos - lstart + 1)
        if kind != "ws":
            s = _ALIASES.get(s, s)
            if kind == "sym" and s in ("top", "pi", "pi'", "eps"):
                kind = "ident"
            out.append(Tok(kind, s, span))
        nl = m.group().count("\n")
        if nl:
            line += nl
            lstart = pos + m.group().rindex("\n") + 1
        pos = m.end()
    out.append(Tok("eof", "", Span(pos, pos, line, pos - lstart + 1)))
    return out


# ---------------------------------------------------------------------------
# parser

class _Bare:
    """A projection or evaluation awaiting its subscripts."""

    def __init__(self, kind: str, span: Span):
        self.kind, self.span = kind, span


_ATOM_START = {"<", "(", "⌜"}


class Parser:
    def __init__(self, text: str, sig: Signature | None = None, types=None, terms=None):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig if sig is not None else Signature()
        self.types = dict(types or {})
        self.terms = dict(terms or {})
        self._eng = None

    # -- token helpers --------------------------------------------------
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "ident")

    def next(self) -> Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.error("expected %r, found %s" % (text, self._desc()))
        return self.next()

    def ident(self) -> Tok:
        if self.tok.kind != "ident":
            self.error("expected a name, found %s" % self._desc())
        return self.next()

    def _desc(self) -> str:
        return "end of input" if self.tok.kind == "eof" else repr(self.tok.text)

    def error(self, msg: str, span: Span | None = None):
        raise ParseError(msg, span or self.tok.span)

    @property
    def engine(self) -> Engine:
        if self._eng is None:
            self._eng = Engine(self.sig)
        return self._eng

    def _kernel(self, fn, span):
        try:
            return fn()
        except ParseError:
            raise
        except GttError as exc:
            raise ParseError(str(exc), span) from None

    # -- file -----------------------------------------------------------
    def parse_file(self) -> SourceFile:
        sf = SourceFile(signature=self.sig)
        while self.tok.kind != "eof":
            sf.declarations.append(self.parse_decl())
            self._eng = None
        sf.types, sf.terms = self.types, self.terms
        return sf

    def _new_name(self) -> Tok:
        t = self.ident()
        if t.text in RESERVED:
            self.error("reserved word %r cannot be declared" % t.text, t.span)
        if t.text in self.sig.generators or t.text in self.sig.indets \
                or t.text in self.types or t.text in self.terms:
            self.error("%r is already declared" % t.text, t.span)
        return t

    def parse_decl(self):
        start = self.tok
        kw = self.ident().text
        sp = start.span
        if kw == "obj":
            n = self._new_name()
            self.expect(";")
            self._kernel(lambda: self.sig.obj(n.text), sp)
            return ObjDecl(n.text, sp)
        if kw == "gen":
            n = self._new_name()
            self.expect(":")
            s = self._boundary()
            self.expect("->")
            t = self._boundary()
            self.expect(";")
            self._kernel(lambda: self.sig.gen(n.text, s, t), sp)
            return GenDecl(n.text, s, t, sp)
        if kw in ("const", "indet"):
            n = self._new_name()
            self.expect(":")
            t = self._boundary()
            self.expect(";")
            if kw == "const":
                self._kernel(lambda: self.sig.const(n.text, t), sp)
                return ConstDecl(n.text, t, sp)
            self._kernel(lambda: self.sig.indet(n.text, t), sp)
            return IndetDecl(n.text, t, sp)
        if kw == "valid":
            e = self.parse_expr()
            self.expect(";")
            self._kernel(lambda: self.sig.add_valid(e), sp)
            return ValidDecl(e, sp)
        if kw == "order":
            a = self.parse_expr()
            self.expect("<=")
            b = self.parse_expr()
            self.expect(";")
            self._kernel(lambda: self.sig.add_order(a, b), sp)
            return OrderDecl(a, b, sp)
        if kw == "type":
            n = self._new_name()
            self.expect("=")
            e = self.parse_expr()
            self.expect(";")
            self._kernel(lambda: self.engine.boundaries(e), sp)
            self.types[n.text] = e
            return TypeDef(n.text, e, sp)
        if kw == "term":
            n = self._new_name()
            self.expect("=")
            t = self.parse_term()
            self.expect(";")
            from .lam import ty
            self._kernel(lambda: ty(t, self.sig), sp)
            self.terms[n.text] = t
            return TermDef(n.text, t, sp)
        self.error("unknown declaration %r" % kw, sp)

    def _boundary(self) -> CatExpr:
        # undeclared names in a signature boundary are objects
        self._implicit = True
        try:
            return self.parse_expr()
        finally:
            self._implicit = False

    # -- elements -------------------------------------------------------
    def parse_expr(self) -> CatExpr:
        e = self._turn()
        return self._resolved(e)

    def _resolved(self, e):
        if isinstance(e, _Bare):
            self.error("cannot infer the subscripts of %s; write %s[A, B]" % (e.kind, e.kind), e.span)
        return e

    def _turn(self):
        left = self._wedge()
        if self.at("|-"):
            self.next()
            right = self._turn()
            return Turnstile(self._resolved(left), self._resolved(right))
        return left

    def _wedge(self):
        left = self._comp()
        while self.at("/\\"):
            self.next()
            right = self._comp()
            left = Wedge(self._resolved(left), self._resolved(right))
        return left

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "ident":
            return True
        return t.kind == "sym" and t.text in _ATOM_START

    def _comp(self):
        factors = [self._postfix()]
        while True:
            if self.at("."):
                self.next()
                factors.append(self._postfix())
            elif self._starts_atom():
                factors.append(self._postfix())
            else:
                break
        if len(factors) == 1:
            return factors[0]
        # fill in bare subscripts from the right
        for k in range(len(factors) - 1, -1, -1):
            f = factors[k]
            if isinstance(f, _Bare):
                if k == len(factors) - 1:
                    self._resolved(f)
                factors[k] = self._infer(f, factors[k + 1])
        out = factors[0]
        for f in factors[1:]:
            out = Comp(out, f)
        return out

    def _infer(self, bare: _Bare, right: CatExpr) -> CatExpr:
        _, t = self._kernel(lambda: self.engine.boundaries(right), bare.span)
        if isinstance(t, Wedge):
            if bare.kind == "pi":
                return Proj1(t.left, t.right)
            if bare.kind == "pi'":
                return Proj2(t.left, t.right)
            if isinstance(t.left, Turnstile) and t.left.left == t.right:
                return Eval(t.right, t.left.right)
        self.error("cannot infer the subscripts of %s from a factor with target %s"
                   % (bare.kind, show(t)), bare.span)

    def _postfix(self):
        e = self._atom()
        while self.at("*"):
            self.next()
            e = Star(self._resolved(e))
        return e

    def _atom(self):
        t = self.tok
        if self.at("("):
            self.next()
            e = self._turn()
            self.expect(")")
            return e
        if self.at("<"):
            self.next()
            a = self.parse_expr()
            self.expect(",")
            b = self.parse_expr()
            self.expect(">")
            return Pair(a, b)
        if t.kind != "ident":
            self.error("expected an element, found %s" % self._desc())
        self.next()
        name = t.text
        if name == "top":
            return Top
        if name == "id":
            self.expect("(")
            e = self.parse_expr()
            self.expect(")")
            return Id(e)
        if name in ("pi", "pi'", "eps"):
            if self.at("["):
                self.next()
                a = self.parse_expr()
                self.expect(",")
                b = self.parse_expr()
                self.expect("]")
                return {"pi": Proj1, "pi'": Proj2, "eps": Eval}[name](a, b)
            return _Bare(name, t.span)
        if name in RESERVED:
            self.error("reserved word %r is not an element" % name, t.span)
        if name in self.types:
            return self.types[name]
        if name in self.sig.generators:
            return Gen(name)
        if name in self.sig.indets:
            return self.sig.indets[name]
        if getattr(self, "_implicit", False):
            self.sig.obj(name)
            self._eng = None
            return Gen(name)
        self.error("undeclared name %r" % name, t.span)

    # -- terms ----------------------------------------------------------
    def parse_term(self) -> T.Term:
        if self.at("\\"):
            self.next()
            v = self._binder()
            self.expect(".")
            return T.Lam(v, self.parse_term())
        f = self._tatom()
        while self.at("@"):
            self.next()
            if self.at("\\"):
                f = T.App(f, self.parse_term())
                break
            f = T.App(f, self._tatom())
        return f

    def _binder(self) -> T.Var:
        t = self.tok
        if self.at("v"):
            return self._var()
        name = self.ident().text
        if name in self.sig.indets:
            return self.engine.indet_var(self.sig.indets[name])
        self.error("binder must be v(T, n) or a declared indeterminate", t.span)

    def _var(self) -> T.Var:
        sp = self.expect("v").span
        self.expect("(")
        ty_ = self.parse_expr()
        self.expect(",")
        if self.tok.kind != "int":
            self.error("expected a variable index")
        n = int(self.next().text)
        self.expect(")")
        if n < 1:
            self.error("standard variables start at 1", sp)
        return T.Var(self._tnf(ty_, sp), n)

    def _tnf(self, e, sp):
        return self._kernel(lambda: self.engine.tnf(e), sp)

    def _targ(self):
        self.expect("(")
        s = self.parse_term()
        self.expect(")")
        return s

    def _tatom(self) -> T.Term:
        t = self.tok
        if self.at("("):
            self.next()
            s = self.parse_term()
            self.expect(")")
            return s
        if self.at("<"):
            self.next()
            a = self.parse_term()
            self.expect(",")
            b = self.parse_term()
            self.expect(">")
            return T.PairT(a, b)
        if self.at("⌜"):
            self.next()
            e = self.parse_expr()
            self.expect("⌝")
            return T.Name(e)
        if t.kind != "ident":
            self.error("expected a term, found %s" % self._desc())
        name = t.text
        if name == "v":
            return self._var()
        self.next()
        if name in ("star", "top"):
            return T.Star()
        if name in ("name", "hole"):
            self.expect("(")
            e = self.parse_expr()
            self.expect(")")
            return T.Name(e) if name == "name" else T.Hole(self._tnf(e, t.span))
        if name == "pi":
            return T.Fst(self._targ())
        if name == "pi'":
            return T.Snd(self._targ())
        if name in RESERVED:
            self.error("reserved word %r is not a term" % name, t.span)
        if name in self.terms:
            return self.terms[name]
        if name in self.sig.constants:
            return T.Const(name)
        if name in self.sig.indets:
            return self.engine.indet_var(self.sig.indets[name])
        self.error("undeclared term name %r" % name, t.span)

    def done(self):
        if self.tok.kind != "eof":
            self.error("unexpected %s" % self._desc())


def parse(text: str) -> SourceFile:
    return Parser(text).parse_file()


def parse_expr(text: str, source: SourceFile | None = None) -> CatExpr:
    p = _sub_parser(text, source)
    e = p.parse_expr()
    p.done()
    return e


def parse_term(text: str, source: SourceFile | None = None) -> T.Term:
    p = _sub_parser(text, source)
    s = p.parse_term()
    p.done()
    return s


def _sub_parser(text, source):
    if source is None:
        return Parser(text)
    return Parser(text, source.signature, source.types, source.terms)


# ---------------------------------------------------------------------------
# printer

def show(e: CatExpr, terse: bool = False) -> str:
    return _show(e, 0, terse)


def _paren(s: str, inner: int, outer: int) -> str:
    return "(%s)" % s if inner < outer else s


def _show(e: CatExpr, prec: int, terse: bool) -> str:
    if isinstance(e, Turnstile):
        return _paren("%s |- %s" % (_show(e.left, 2, terse), _show(e.right, 1, terse)), 1, prec)
    if isinstance(e, Wedge):
        return _paren("%s /\\ %s" % (_show(e.left, 2, terse), _show(e.right, 3, terse)), 2, prec)
    if isinstance(e, Comp):
        return _paren("%s . %s" % (_show(e.left, 3, terse), _show(e.right, 4, terse)), 3, prec)
    if isinstance(e, Star):
        return _show(e.arg, 5, terse) + "*"
    if e is Top:
        return "top"
    if isinstance(e, Id):
        return "id(%s)" % _show(e.arg, 0, terse)
    if isinstance(e, (Proj1, Proj2, Eval)):
        head = {Proj1: "pi", Proj2: "pi'", Eval: "eps"}[type(e)]
        if terse:
            return head
        return "%s[%s, %s]" % (head, _show(e.left, 0, terse), _show(e.right, 0, terse))
    if isinstance(e, Pair):
        return "<%s, %s>" % (_show(e.left, 0, terse), _show(e.right, 0, terse))
    if isinstance(e, (Gen, Indet)):
        return e.name
    raise GttError("cannot print %r" % (e,))


def show_term(s: T.Term, terse: bool = False) -> str:
    return _tshow(s, 0, terse)


def _tshow(s: T.Term, prec: int, terse: bool) -> str:
    match s:
        case T.Lam(v, body):
            return _paren("\\%s. %s" % (_tshow(v, 2, terse), _tshow(body, 0, terse)), 0, prec)
        case T.App(f, a):
            return _paren("%s @ %s" % (_tshow(f, 1, terse), _tshow(a, 2, terse)), 1, prec)
        case T.Var(t, n):
            return "v(%s, %d)" % (show(t, terse), n)
        case T.Star():
            return "star"
        case T.Name(a):
            return "name(%s)" % show(a, terse)
        case T.Hole(t):
            return "hole(%s)" % show(t, terse)
        case T.Const(k):
            return k
        case T.Fst(a):
            return "pi(%s)" % _tshow(a, 0, terse)
        case T.Snd(a):
            return "pi'(%s)" % _tshow(a, 0, terse)
        case T.PairT(a, b):
            return "<%s, %s>" % (_tshow(a, 0, terse), _tshow(b, 0, terse))
    raise GttError("cannot print %r" % (s,))


def show_decl(d) -> str:
    match d:
        case ObjDecl(n):
            return "obj %s;" % n
        case GenDecl(n, s, t):
            return "gen %s : %s -> %s;" % (n, show(s), show(t))
        case ConstDecl(n, t):
            return "const %s : %s;" % (n, show(t))
        case IndetDecl(n, t):
            return "indet %s : %s;" % (n, show(t))
        case ValidDecl(e):
            return "valid %s;" % show(e)
        case OrderDecl(a, b):
            return "order %s <= %s;" % (show(a), show(b))
        case TypeDef(n, e):
            return "type %s = %s;" % (n, show(e))
        case TermDef(n, t):
            return "term %s = %s;" % (n, show_term(t))
    raise GttError("cannot print %r" % (d,))


def show_file(sf: SourceFile) -> str:
    return "".join(show_decl(d) + "\n" for d in sf.declarations)


def canonicalize(text: str) -> str:
    return show_file(parse(text))


# ---------------------------------------------------------------------------
# random files, for round-trip testing

def random_file(rng, size: int = 5) -> SourceFile:
    """A well-formed random declaration list (not parsed, built directly)."""
    from . import randgen
    from .lam import ty as term_type
    sig = Signature()
    decls = []
    for name in rng.sample(["a", "b", "c", "d"], rng.randint(1, 3)):
        sig.obj(name)
        decls.append(ObjDecl(name))
    for i in range(rng.randint(0, 3)):
        s, t = randgen.random_type(rng, sig, 2), randgen.random_type(rng, sig, 2)
        sig.gen("g%d" % i, s, t)
        decls.append(GenDecl("g%d" % i, s, t))
    for i in range(rng.randint(0, 2)):
        t = randgen.random_type(rng, sig, 2)
        sig.const("k%d" % i, t)
        decls.append(ConstDecl("k%d" % i, t))
    for i in range(rng.randint(0, 2)):
        t = randgen.random_type(rng, sig, 1)
        x = sig.indet("x%d" % (i + 1), t)
        decls.append(IndetDecl(x.name, t))
    xs = tuple(sig.indets.values())
    for _ in range(rng.randint(0, 2)):
        e, _, _ = randgen.random_arrow(rng, sig, size, indets=xs)
        decls.append(ValidDecl(e))
    if rng.random() < 0.4 and len(sig.objects) > 1:
        # follow declaration order so the relation stays antisymmetric
        lo, hi = sorted(rng.sample(range(len(sig.objects)), 2))
        lo, hi = Gen(sig.objects[lo]), Gen(sig.objects[hi])
        sig.add_order(lo, hi)
        decls.append(OrderDecl(lo, hi))
    for i in range(rng.randint(0, 2)):
        e, _, _ = randgen.random_arrow(rng, sig, size, indets=xs)
        decls.append(TypeDef("p%d" % i, e))
    for i in range(rng.randint(0, 2)):
        s = randgen.random_term(rng, sig, randgen.random_type(rng, sig, 2), size)
        term_type(s, sig)
        decls.append(TermDef("s%d" % i, s))
    return SourceFile(decls, sig)
