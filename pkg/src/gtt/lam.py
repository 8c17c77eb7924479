"""The generalized typed lambda calculus over a signature of types.

Types are elements of the signature (compared in type normal form); the
constants are the signature's declared ``const`` generators.  Equality is
decided by normalization to long beta-eta normal form followed by a
canonical renaming of binders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import IllTyped, NotABulletin, TypeMismatch
from .expr import CatExpr, Gen, Top, Turnstile, Wedge
from .nbe import Engine
from .signature import Signature
from .terms import (App, Const, Fst, Hole, Lam, Name, PairT, Snd, Star, Term,
                    Var, all_vars)
from . import terms as _t


@dataclass
class LambdaCalculus:
    sig: Signature
    validating: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.engine = Engine(self.sig)

    def tnf(self, e: CatExpr) -> CatExpr:
        return self.engine.tnf(e)

    def var(self, ty: CatExpr, n: int) -> Var:
        return Var(self.tnf(ty), n)


def _calc(lam) -> LambdaCalculus:
    return lam if isinstance(lam, LambdaCalculus) else LambdaCalculus(lam)


# ---------------------------------------------------------------------------
# typing

def ty(s: Term, lam) -> CatExpr:
    lam = _calc(lam)
    eng = lam.engine
    match s:
        case Var():
            if s.n < 1:
                raise IllTyped("standard variables start at 1: %r" % (s,), s)
            return s.type
        case Star():
            return Top
        case Name(a):
            src, tgt = eng.boundaries(a)
            return Turnstile(src, tgt)
        case Const(k):
            if not lam.sig.is_constant(k):
                raise IllTyped("%r is not a declared constant" % k, s)
            return eng.const_type(k)
        case Hole(t):
            return t
        case Fst(a) | Snd(a):
            w = ty(a, lam)
            if not isinstance(w, Wedge):
                raise IllTyped("projection of a term of type %r" % (w,), s)
            return w.left if isinstance(s, Fst) else w.right
        case PairT(a, b):
            return Wedge(ty(a, lam), ty(b, lam))
        case App(f, a):
            ft = ty(f, lam)
            if not isinstance(ft, Turnstile):
                raise IllTyped("applying a term of type %r" % (ft,), s)
            at = ty(a, lam)
            if at != ft.left:
                raise TypeMismatch("argument of type %r where %r expected" % (at, ft.left), s)
            return ft.right
        case Lam(x, body):
            return Turnstile(x.type, ty(body, lam))
    raise IllTyped("not a term: %r" % (s,), s)


def free_vars(s: Term, lam=None) -> frozenset:
    validating = lam.validating if isinstance(lam, LambdaCalculus) else frozenset()
    return _t.free_vars(s, validating)


# ---------------------------------------------------------------------------
# substitution

def _rename_bound(s: Term, ren: Mapping[Var, Var], scope: dict) -> Term:
    match s:
        case Var():
            return scope.get(s, s)
        case Lam(v, body):
            if v in ren:
                nv = ren[v]
                return Lam(nv, _rename_bound(body, ren, {**scope, v: nv}))
            inner = {k: w for k, w in scope.items() if k != v}
            return Lam(v, _rename_bound(body, ren, inner))
    kids = s.children
    if not kids:
        return s
    return _t.rebuild(s, [_rename_bound(c, ren, scope) for c in kids])


def _replace(s: Term, x: Var, t: Term) -> Term:
    match s:
        case Var():
            return t if s == x else s
        case Lam(v, body):
            if v == x:
                return s
            return Lam(v, _replace(body, x, t))
    kids = s.children
    if not kids:
        return s
    return _t.rebuild(s, [_replace(c, x, t) for c in kids])


def subst(s: Term, x: Var, t: Term, lam=None) -> Term:
    """``s[x/t]``.  Binders of s that would capture a free variable of t are
    shifted, all by the same least n, to indices unused in s and t."""
    if lam is not None:
        tt = ty(t, lam)
        if tt != x.type:
            raise TypeMismatch("substituting %r for a variable of type %r" % (tt, x.type), t)
    fv_t = _t.free_vars(t)
    clash = {v for v in _t.binders(s) if v in fv_t}
    if clash:
        used = all_vars(s) | all_vars(t)
        n = 1
        while any(Var(v.type, v.n + n) in used for v in clash):
            n += 1
        s = _rename_bound(s, {v: Var(v.type, v.n + n) for v in clash}, {})
    return _replace(s, x, t)


# ---------------------------------------------------------------------------
# normalization

def canonical_rename(s: Term) -> Term:
    """Give every binder the least index not free in s and not used by an
    enclosing binder of the same type."""
    fv = _t.free_vars(s)
    taken: dict[CatExpr, set] = {}
    for v in fv:
        taken.setdefault(v.type, set()).add(v.n)
    return _canon(s, {}, taken)


def _canon(s: Term, scope: dict, taken: dict) -> Term:
    match s:
        case Var():
            return scope.get(s, s)
        case Lam(v, body):
            used = taken.get(v.type, set())
            n = 1
            while n in used:
                n += 1
            nv = Var(v.type, n)
            inner = dict(taken)
            inner[v.type] = used | {n}
            return Lam(nv, _canon(body, {**scope, v: nv}, inner))
    kids = s.children
    if not kids:
        return s
    return _t.rebuild(s, [_canon(c, scope, taken) for c in kids])


def normalize_term(s: Term, lam) -> Term:
    lam = _calc(lam)
    t = ty(s, lam)
    eng = lam.engine
    return canonical_rename(eng.reify(t, eng.eval_term(s, {})))


def term_equal(s: Term, t: Term, lam) -> bool:
    lam = _calc(lam)
    if ty(s, lam) != ty(t, lam):
        return False
    return s == t or normalize_term(s, lam) == normalize_term(t, lam)


def unname(s: Term, lam) -> CatExpr:
    """The element A with ``name(A) @ x`` equal to s, where x is the one
    free variable of s."""
    lam = _calc(lam)
    fv = free_vars(s, lam)
    if len(fv) != 1:
        raise NotABulletin("expected exactly one free variable, found %d" % len(fv))
    (x,) = fv
    ty(s, lam)
    eng = lam.engine
    body = eng.reify(ty(s, lam), eng.eval_term(s, {}))
    return eng.readback(body, ((x, x.type),))


def as_constant(lam, x: Var) -> LambdaCalculus:
    lam = _calc(lam)
    out = LambdaCalculus(lam.sig, lam.validating | {x})
    return out


def star_apply(a: CatExpr, s: Term) -> Term:
    """``A * s``: a type used as a function constant, ``name(A) @ s``."""
    return App(Name(a), s)


# ---------------------------------------------------------------------------
# translations

def translate(phi: Mapping[str, CatExpr], src, dst, s: Term) -> Term:
    """Homomorphic image of s under a generator mapping ``phi``."""
    from .iccc import IcccMorphism, _extend
    src, dst = _calc(src), _calc(dst)
    F = IcccMorphism(src.sig, dst.sig, dict(phi))

    def go(u: Term) -> Term:
        match u:
            case Var():
                return Var(dst.tnf(_extend(F, u.type)), u.n)
            case Lam(v, body):
                return Lam(go(v), go(body))
            case Name(a):
                return Name(_extend(F, a))
            case Const(k):
                img = _extend(F, Gen(k))
                if isinstance(img, Gen) and dst.sig.is_constant(img.name):
                    return Const(img.name)
                return App(Name(img), Star())
            case Hole(t):
                return Hole(dst.tnf(_extend(F, t)))
        kids = u.children
        if not kids:
            return u
        return _t.rebuild(u, [go(c) for c in kids])
    out = go(s)
    ty(out, dst)
    return out
