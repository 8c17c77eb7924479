"""Symbols, the category of a lambda calculus, the internal language of a
category, and the round trips between them.

A Symbol ``<x | s>`` is an arrow ty(x) -> ty(s).  Symbols are kept canonical:
the body is in normal form and the binder is the first standard variable of
its type.  A body whose only free variable is not the binder denotes the
generic arrow and is stored as a hole (or as the binder when the two types
agree, the generic arrow A -> A being the identity).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import GttError, NotABulletin
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge, has_indet)
from .iccc import IcccMorphism, _extend
from .lam import (LambdaCalculus, _calc, canonical_rename, free_vars,
                  normalize_term, subst, translate, ty)
from .nbe import Engine
from .poly import beta, kappa
from .signature import Signature
from . import randgen
from . import terms as T
from .terms import App, Fst, Hole, Lam, Name, PairT, Snd, Term, Var


@dataclass(frozen=True)
class Symbol:
    var: Var
    body: Term

    @property
    def source(self) -> CatExpr:
        return self.var.type

    def __repr__(self):
        return "<%r | %r>" % (self.var, self.body)


def make_symbol(var: Var, body: Term, lam) -> Symbol:
    """Canonical symbol for ``<var | body>``."""
    lam = _calc(lam)
    nf = normalize_term(body, lam)
    fv = free_vars(nf, lam)
    x1 = Var(var.type, 1)
    if fv <= {var}:
        if var != x1:
            nf = canonical_rename(subst(nf, var, x1))
        return Symbol(x1, nf)
    if len(fv) == 1:
        # the generic arrow ty(x) -> ty(s); between equal types it is 1
        t = ty(nf, lam)
        return Symbol(x1, normalize_term(x1 if t == x1.type else Hole(t), lam))
    raise NotABulletin("body has %d free variables" % len(fv))


def symbol_target(sym: Symbol, lam) -> CatExpr:
    return ty(sym.body, lam)


# ---------------------------------------------------------------------------
# syntactic translations between elements and terms

def cat_to_term(e: CatExpr, arg: Term, lam) -> Term:
    """The term for ``e`` applied to ``arg`` (no normalization)."""
    lam = _calc(lam)
    eng = lam.engine
    sig = lam.sig
    if e is Top or isinstance(e, Id):
        return arg
    if isinstance(e, Gen):
        if sig.is_object(e.name):
            return arg
        if sig.is_constant(e.name):
            return T.Const(e.name)
        return App(Name(e), arg)
    if isinstance(e, Indet):
        return eng.indet_var(e)
    if isinstance(e, Turnstile):
        hat, bar = eng.tnf(e.left), eng.tnf(e.right)
        if hat == bar:
            return arg
        if hat is Top:
            return T.Star()
        return Hole(hat)
    if isinstance(e, Comp):
        inner = cat_to_term(e.right, arg, lam)
        if isinstance(inner, (Var, T.Star, T.Const, Hole)):
            return cat_to_term(e.left, inner, lam)
        # share the argument: pairs and projections would copy the tree
        y = Var(eng.tnf(eng.boundaries(e.right)[1]), 50_000 + e.size)
        return App(Lam(y, cat_to_term(e.left, y, lam)), inner)
    if isinstance(e, Pair):
        return PairT(cat_to_term(e.left, arg, lam), cat_to_term(e.right, arg, lam))
    if isinstance(e, Wedge):
        return PairT(cat_to_term(e.left, Fst(arg), lam), cat_to_term(e.right, Snd(arg), lam))
    if isinstance(e, Proj1):
        return Fst(arg)
    if isinstance(e, Proj2):
        return Snd(arg)
    if isinstance(e, Eval):
        return App(Fst(arg), Snd(arg))
    if isinstance(e, Star):
        src = eng.boundaries(e.arg)[0]
        y = Var(src.right, 10_000 + e.size)
        return Lam(y, cat_to_term(e.arg, PairT(arg, y), lam))
    raise GttError("cannot translate %r" % (e,))


def to_symbol(e: CatExpr, lam) -> Symbol:
    """L-side image of an element a -> b: ``<x : a | e(x)>``."""
    lam = _calc(lam)
    a, _ = lam.engine.boundaries(e)
    x = Var(a, 1)
    return make_symbol(x, cat_to_term(e, x, lam), lam)


def from_symbol(sym: Symbol, lam) -> CatExpr:
    """The element of the category named by a canonical symbol."""
    lam = _calc(lam)
    eng = lam.engine
    t = ty(sym.body, lam)
    body = eng.reify(t, eng.eval_term(sym.body, {}))
    return eng.readback(body, ((sym.var, sym.var.type),))


def term_to_poly(s: Term, lam) -> CatExpr:
    """A term as a polynomial top -> ty(s); variables become indeterminates
    and binders are eliminated with kappa."""
    lam = _calc(lam)
    return _tp(canonical_rename(s), lam)


def _tp(s: Term, lam) -> CatExpr:
    eng = lam.engine
    match s:
        case Var():
            return eng.var_indet(s)
        case T.Star():
            return Id(Top)
        case Name(a):
            src = eng.boundaries(a)[0]
            return Star(Comp(a, Proj2(Top, src)))
        case T.Const(k):
            return Gen(k)
        case Hole(t):
            return Turnstile(t, Top)
        case Fst(a) | Snd(a):
            w = ty(a, lam)
            p = Proj1(w.left, w.right) if isinstance(s, Fst) else Proj2(w.left, w.right)
            return Comp(p, _tp(a, lam))
        case PairT(a, b):
            return Pair(_tp(a, lam), _tp(b, lam))
        case App(f, a):
            ft = ty(f, lam)
            return Comp(Eval(ft.left, ft.right), Pair(_tp(f, lam), _tp(a, lam)))
        case Lam(y, body):
            yi = eng.var_indet(y)
            g = Comp(kappa(yi, _tp(body, lam), lam.sig, eng), beta(y.type))
            return Star(Comp(g, Proj2(Top, y.type)))
    raise GttError("cannot translate %r" % (s,))


def epsilon_C(sym: Symbol, lam) -> CatExpr:
    """eps_C<x|phi>: eps_x(phi) when phi mentions at most x, else the generic
    arrow ty(x) -> ty(phi).  Not normalized."""
    lam = _calc(lam)
    eng = lam.engine
    fv = free_vars(sym.body, lam)
    if not fv <= {sym.var}:
        # a stray variable may vanish on normalization
        sym = make_symbol(sym.var, sym.body, lam)
        fv = free_vars(sym.body, lam)
    if fv <= {sym.var}:
        x = eng.var_indet(sym.var)
        return Comp(kappa(x, _tp(canonical_rename(sym.body), lam), lam.sig, eng), beta(sym.var.type))
    return Turnstile(ty(sym.body, lam), sym.var.type)


def eta(lam, item):
    """eta on a type (identity on the element naming it) or on a term (its
    polynomial in the internal language of C(lam))."""
    lam = _calc(lam)
    if isinstance(item, Term):
        return term_to_poly(item, lam)
    return lam.tnf(item)


# ---------------------------------------------------------------------------
# the category of symbols

class SymbolCategory:
    """ICCC operations computed directly on symbols."""

    def __init__(self, lam):
        self.lam = _calc(lam)

    def sym(self, var, body):
        return make_symbol(var, body, self.lam)

    def identity(self, a: CatExpr) -> Symbol:
        y = Var(self.lam.tnf(a), 1)
        return Symbol(y, normalize_term(y, self.lam))

    def source(self, f: Symbol):
        return f.var.type

    def target(self, f: Symbol):
        return ty(f.body, self.lam)

    def compose(self, f: Symbol, g: Symbol) -> Symbol:
        """f . g = <y | s[x/t]> for f = <x|s>, g = <y|t>."""
        if self.target(g) != self.source(f):
            raise GttError("symbols not composable")
        return self.sym(g.var, subst(f.body, f.var, g.body))

    def top(self, a: CatExpr = Top) -> Symbol:
        return self.sym(Var(self.lam.tnf(a), 1), T.Star())

    def wedge(self, f: Symbol, g: Symbol) -> Symbol:
        z = Var(Wedge(f.var.type, g.var.type), 1)
        return self.sym(z, PairT(subst(f.body, f.var, Fst(z)), subst(g.body, g.var, Snd(z))))

    def pair(self, f: Symbol, g: Symbol) -> Symbol:
        if f.var.type != g.var.type:
            raise GttError("pairing needs equal sources")
        return self.sym(f.var, PairT(f.body, subst(g.body, g.var, f.var)))

    def star(self, f: Symbol) -> Symbol:
        w = f.var.type
        if not isinstance(w, Wedge):
            raise GttError("star needs a wedge source")
        x = Var(w.left, 1)
        y = Var(w.right, 1 if w.right != w.left else 2)
        return self.sym(x, Lam(y, subst(f.body, f.var, PairT(x, y))))

    def proj1(self, a, b) -> Symbol:
        z = Var(Wedge(a, b), 1)
        return self.sym(z, Fst(z))

    def proj2(self, a, b) -> Symbol:
        z = Var(Wedge(a, b), 1)
        return self.sym(z, Snd(z))

    def eval(self, a, b) -> Symbol:
        z = Var(Wedge(Turnstile(a, b), a), 1)
        return self.sym(z, App(Fst(z), Snd(z)))

    def turnstile(self, hat: CatExpr, bar: CatExpr) -> Symbol:
        """The generic arrow bar -> hat: ``<u | v>`` with u, v distinct."""
        u = Var(bar, 1)
        return self.sym(u, u if hat == bar else Var(hat, 1))

    def op(self, e: CatExpr) -> Symbol:
        """Interpret an element by recursion on its syntax."""
        lam = self.lam
        if isinstance(e, Comp):
            return self.compose(self.op(e.left), self.op(e.right))
        if isinstance(e, Pair):
            return self.pair(self.op(e.left), self.op(e.right))
        if isinstance(e, Wedge):
            return self.wedge(self.op(e.left), self.op(e.right))
        if isinstance(e, Star):
            return self.star(self.op(e.arg))
        if isinstance(e, Proj1):
            return self.proj1(lam.tnf(e.left), lam.tnf(e.right))
        if isinstance(e, Proj2):
            return self.proj2(lam.tnf(e.left), lam.tnf(e.right))
        if isinstance(e, Eval):
            return self.eval(lam.tnf(e.left), lam.tnf(e.right))
        if isinstance(e, Id):
            return self.identity(e.arg)
        if isinstance(e, Turnstile):
            return self.turnstile(lam.tnf(e.left), lam.tnf(e.right))
        return to_symbol(e, lam)


def build_C(lam) -> SymbolCategory:
    return SymbolCategory(lam)


@dataclass
class InternalLanguage:
    """L of a category: types are elements, terms are source-top polynomials."""
    sig: Signature
    engine: Engine = field(init=False)

    def __post_init__(self):
        self.engine = Engine(self.sig)

    def ty(self, phi: CatExpr) -> CatExpr:
        return self.engine.boundaries(phi)[1]

    def top_type(self) -> CatExpr:
        """The terminal type top |- top (as an element, the identity on top)."""
        return Turnstile(Top, Top)

    def equal(self, p: CatExpr, q: CatExpr) -> bool:
        from .poly import eq_x
        return eq_x(p, q, self.sig, self.engine)


def build_L(sig: Signature) -> InternalLanguage:
    return InternalLanguage(sig)


def functor_C(phi: Mapping[str, CatExpr], src, dst):
    """C of a translation: symbols map body- and variable-wise."""
    src, dst = _calc(src), _calc(dst)

    def F(sym: Symbol) -> Symbol:
        v = translate(phi, src, dst, sym.var)
        return make_symbol(v, translate(phi, src, dst, sym.body), dst)
    return F


def functor_L(F: IcccMorphism):
    """L of a morphism: types and polynomials map homomorphically."""
    def G(item: CatExpr) -> CatExpr:
        return _extend(F, item)
    return G


# ---------------------------------------------------------------------------
# triangle checks

@dataclass
class TriangleReport:
    types: int = 0
    terms: int = 0
    symbols: int = 0
    naturality: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"types": self.types, "terms": self.terms, "symbols": self.symbols,
                "naturality": self.naturality, "ok": self.ok,
                "failures": [repr(f) for f in self.failures[:20]]}


def _objects(sig):
    return [Gen(o) for o in sig.objects]


def check_triangles(lam, sig: "Signature | None" = None, samples: int = 100,
                    seed: int = 0, size: int = 8) -> TriangleReport:
    lam = _calc(lam)
    sig = sig or lam.sig
    eng = lam.engine
    rng = random.Random(seed)
    rep = TriangleReport()
    for i in range(samples):
        # types: f -> <x | name(f) @ x> -> eps_x -> f
        e, a, b = randgen.random_arrow(rng, sig, size)
        x = Var(eng.tnf(a), 1)
        sym = make_symbol(x, App(Name(e), x), lam)
        back = eng.normalize(epsilon_C(sym, lam))
        if back != eng.normalize(e):
            rep.failures.append(("type", e, back))
        rep.types += 1

        # terms of the internal language: phi over one indeterminate x
        # factors as eps_x(phi) . x; a phi without x also survives <u:top|phi>
        tgt = randgen.random_type(rng, sig, 2)
        X = randgen.random_type(rng, sig, 1)
        xi = Indet("x1", eng.tnf(X))
        phi = randgen.random_element(rng, sig, Top, eng.tnf(tgt), size, indets=(xi,))
        g = eng.normalize(Comp(kappa(xi, phi, sig, eng), beta(xi.target)))
        if eng.normalize(Comp(g, xi)) != eng.normalize(phi):
            rep.failures.append(("term", phi, g))
        if not has_indet(phi):
            u = Var(Top, 1)
            back = eng.normalize(epsilon_C(make_symbol(u, cat_to_term(phi, u, lam), lam), lam))
            if back != eng.normalize(phi):
                rep.failures.append(("closed term", phi, back))
        rep.terms += 1

        # symbols: <x | s> -> eps of its polynomial -> back to a symbol
        A = randgen.random_type(rng, sig, 1)
        B = randgen.random_type(rng, sig, 2)
        x = Var(A, 1)
        free = (x,) if rng.random() < 0.9 else (Var(randgen.random_type(rng, sig, 1), 7),)
        body = randgen.random_term(rng, sig, B, size, free=free)
        try:
            sym = make_symbol(x, body, lam)
        except NotABulletin:
            continue
        round_trip = to_symbol(epsilon_C(Symbol(x, body), lam), lam)
        if round_trip != sym:
            rep.failures.append(("symbol", Symbol(x, body), sym, round_trip))
        back = from_symbol(sym, lam)
        if to_symbol(back, lam) != sym:
            rep.failures.append(("bijection", sym, back))
        rep.symbols += 1

    # naturality: morphisms that permute or collapse generators
    for i in range(max(1, samples // 10)):
        F = random_morphism(rng, sig)
        for _ in range(5):
            e, a, b = randgen.random_arrow(rng, sig, size)
            lhs = to_symbol(F(e), lam)
            rhs = functor_C(F.mapping, lam, lam)(to_symbol(e, lam))
            if lhs != rhs:
                rep.failures.append(("naturality", F.mapping, e, lhs, rhs))
            rep.naturality += 1
    return rep


def random_morphism(rng, sig: Signature) -> IcccMorphism:
    """An endomorphism fixing objects and sending each arrow generator to
    a random element with the same boundaries."""
    mapping = {o: Gen(o) for o in sig.objects}
    eng = Engine(sig)
    for n, (s, t) in sig.generators.items():
        if sig.is_object(n):
            continue
        if sig.is_constant(n):
            mapping[n] = Gen(n)
            continue
        mapping[n] = _nonconstant_image(rng, sig, eng, Gen(n), eng.tnf(s), eng.tnf(t))
    return IcccMorphism(sig, sig, mapping)


def _nonconstant_image(rng, sig, eng, default, s, t, tries: int = 20):
    # a non-constant generator must not land in K: f . (s |- g) = t |- g
    # holds for f but fails for constants, so such an F breaks equations
    lam = LambdaCalculus(sig)
    x = Var(s, 1)
    for _ in range(tries):
        e = randgen.random_element(rng, sig, s, t, 4)
        if x in free_vars(normalize_term(cat_to_term(e, x, lam), lam), lam):
            return e
    return default


def random_generators(kind: str, size: int, seed, sig: "Signature | None" = None):
    """Deterministic random item: 'term', 'expr' or 'symbol'."""
    from .signature import simple_signature
    sig = sig or simple_signature("ab", [("f", "a", "b"), ("g", "b", "a")])
    rng = random.Random(seed)
    if kind == "expr":
        return randgen.random_arrow(rng, sig, size)[0]
    ty_ = randgen.random_type(rng, sig, 2)
    if kind == "term":
        return randgen.random_term(rng, sig, ty_, size)
    if kind == "symbol":
        A = randgen.random_type(rng, sig, 1)
        x = Var(A, 1)
        return make_symbol(x, randgen.random_term(rng, sig, ty_, size, free=(x,)), sig)
    raise ValueError("unknown kind %r" % kind)
