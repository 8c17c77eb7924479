"""Normalization by evaluation shared by the categorical and lambda sides.

An element ``e : A -> B`` is read as a function from values of A to values
of B.  Values are eta-long by construction: ``()`` at top, Python pairs at
wedges, Python callables at turnstiles, and neutral terms at base types.
Reifying gives the long beta-eta normal form; ``readback`` turns that back
into a canonical CatExpr.

Generic arrows ``f |- g`` (f != g, f not top) are interpreted as a closed
generic inhabitant ``Hole(f)``.  A base neutral that mentions a hole but no
variable is identified with the hole of its type; this is what makes
``f . (a |- g)`` collapse to ``b |- g`` while constants stay put.
"""
from __future__ import annotations

import itertools
import re

from . import gencat
from .errors import IllTyped, MalformedExpr
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge, ter)
from .signature import Signature
from .terms import (App, Const, Fst, Hole, Lam, Name, PairT, Snd, Term, Var,
                    free_vars, has_hole)
from .terms import Star as Unit

_fresh = itertools.count(1)
_XN = re.compile(r"x(\d+)")
_DECLARED_BASE = 1000


def _bound(ty: CatExpr) -> Var:
    return Var(ty, -next(_fresh))


class Engine:
    """Evaluation context for one signature."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self._tnf: dict[CatExpr, CatExpr] = {}
        self._sem: dict[CatExpr, object] = {}
        self._nf: dict[CatExpr, CatExpr] = {}
        self._extra: dict[Indet, Var] = {}
        self._extra_inv: dict[Var, Indet] = {}

    # -- types ------------------------------------------------------------
    def tnf(self, e: CatExpr) -> CatExpr:
        """Type normal form: top, wedge and turnstile are structural, an
        identity ``id(a)`` is the type ``a |- a``, everything else is an
        opaque base type named by its element normal form."""
        hit = self._tnf.get(e)
        if hit is not None:
            return hit
        if e is Top:
            out = Top
        elif isinstance(e, (Wedge, Turnstile)):
            out = type(e)(self.tnf(e.left), self.tnf(e.right))
        elif isinstance(e, Id):
            a = self.tnf(e.arg)
            out = Turnstile(a, a)
        elif isinstance(e, Gen) and self.sig.is_object(e.name):
            out = e
        elif isinstance(e, Gen):
            self.sig.boundaries(e.name)
            out = e
        elif isinstance(e, Indet):
            out = e
        else:
            nf = self.normalize(e)
            out = nf if nf == e or not _structural(nf) else self.tnf(nf)
        self._tnf[e] = out
        return out

    def boundaries(self, e: CatExpr) -> tuple[CatExpr, CatExpr]:
        s, t = gencat.boundaries(e, self.sig)
        return self.tnf(s), self.tnf(t)

    def const_type(self, name: str) -> CatExpr:
        return self.tnf(self.sig.boundaries(name)[1])

    # -- indeterminates <-> variables ---------------------------------------
    def indet_var(self, x: Indet) -> Var:
        ty = self.tnf(x.target)
        m = _XN.fullmatch(x.name)
        if m and int(m.group(1)) >= 1:
            return Var(ty, int(m.group(1)))
        same = [y for y in self.sig.indets.values()
                if not _XN.fullmatch(y.name) and self.tnf(y.target) == ty]
        if x in same:
            return Var(ty, _DECLARED_BASE + same.index(x))
        # undeclared: a stable index past the declared ones, per engine
        v = self._extra.get(x)
        if v is None:
            taken = len(same) + sum(1 for y in self._extra if self.tnf(y.target) == ty)
            v = Var(ty, _DECLARED_BASE + taken)
            self._extra[x] = v
            self._extra_inv[v] = x
        return v

    def var_indet(self, v: Var) -> Indet:
        if v in self._extra_inv:
            return self._extra_inv[v]
        if v.n >= _DECLARED_BASE:
            same = [y for y in self.sig.indets.values()
                    if not _XN.fullmatch(y.name) and self.tnf(y.target) == v.type]
            k = v.n - _DECLARED_BASE
            if k < len(same):
                return same[k]
        return Indet("x%d" % v.n, v.type)

    # -- reflect / reify ----------------------------------------------------
    def reflect(self, ty: CatExpr, t: Term):
        if ty is Top:
            return ()
        if isinstance(ty, Wedge):
            return (self.reflect(ty.left, Fst(t)), self.reflect(ty.right, Snd(t)))
        if isinstance(ty, Turnstile):
            return lambda v: self.reflect(ty.right, App(t, self.reify(ty.left, v)))
        if has_hole(t) and not isinstance(t, Hole) and not free_vars(t):
            return Hole(ty)
        return t

    def reify(self, ty: CatExpr, v) -> Term:
        if ty is Top:
            return Unit()
        if isinstance(ty, Wedge):
            return PairT(self.reify(ty.left, v[0]), self.reify(ty.right, v[1]))
        if isinstance(ty, Turnstile):
            x = _bound(ty.left)
            return Lam(x, self.reify(ty.right, v(self.reflect(ty.left, x))))
        return v

    # -- semantics of elements ----------------------------------------------
    def sem(self, e: CatExpr):
        hit = self._sem.get(e)
        if hit is None:
            hit = self._sem[e] = self._build(e)
        return hit

    def _build(self, e: CatExpr):
        sig = self.sig
        if e is Top or isinstance(e, Id):
            return _identity
        if isinstance(e, Gen):
            if sig.is_object(e.name):
                return _identity
            s, t = self.boundaries(e)
            if sig.is_constant(e.name):
                return lambda v: self.reflect(t, Const(e.name))
            head = Name(e)
            return lambda v: self.reflect(t, App(head, self.reify(s, v)))
        if isinstance(e, Indet):
            t = self.tnf(e.target)
            x = self.indet_var(e)
            return lambda v: self.reflect(t, x)
        if isinstance(e, Turnstile):
            hat, bar = self.tnf(e.left), self.tnf(e.right)
            if hat == bar:
                return _identity
            if hat is Top:
                return lambda v: ()
            return lambda v: self.reflect(hat, Hole(hat))
        if isinstance(e, Comp):
            f, g = self.sem(e.left), self.sem(e.right)
            return lambda v: f(g(v))
        if isinstance(e, Wedge):
            f, g = self.sem(e.left), self.sem(e.right)
            return lambda v: (f(v[0]), g(v[1]))
        if isinstance(e, Pair):
            f, g = self.sem(e.left), self.sem(e.right)
            return lambda v: (f(v), g(v))
        if isinstance(e, Proj1):
            return lambda v: v[0]
        if isinstance(e, Proj2):
            return lambda v: v[1]
        if isinstance(e, Eval):
            return lambda v: v[0](v[1])
        if isinstance(e, Star):
            f = self.sem(e.arg)
            return lambda v: (lambda w: f((v, w)))
        raise MalformedExpr("cannot interpret %r" % (e,))

    # -- semantics of terms --------------------------------------------------
    def eval_term(self, s: Term, env: dict):
        match s:
            case Var():
                if s in env:
                    return env[s]
                return self.reflect(s.type, s)
            case Unit():
                return ()
            case Name(a):
                return self.sem(a)
            case Const(k):
                return self.reflect(self.const_type(k), s)
            case Hole(ty):
                return self.reflect(ty, s)
            case Fst(a):
                return self.eval_term(a, env)[0]
            case Snd(a):
                return self.eval_term(a, env)[1]
            case PairT(a, b):
                return (self.eval_term(a, env), self.eval_term(b, env))
            case App(f, a):
                return self.eval_term(f, env)(self.eval_term(a, env))
            case Lam(x, body):
                return lambda w: self.eval_term(body, {**env, x: w})
        raise IllTyped("cannot evaluate %r" % (s,), s)

    # -- element normal forms -----------------------------------------------
    def element_body(self, e: CatExpr) -> tuple[CatExpr, CatExpr, Var, Term]:
        """Long normal body of e applied to a context variable ``v(A, 0)``."""
        a, b = self.boundaries(e)
        x = Var(a, 0)
        return a, b, x, self.reify(b, self.sem(e)(self.reflect(a, x)))

    def normalize(self, e: CatExpr) -> CatExpr:
        hit = self._nf.get(e)
        if hit is not None:
            return hit
        a, _, x, body = self.element_body(e)
        out = self.readback(body, ((x, a),))
        self._nf[e] = out
        return out

    # -- readback ------------------------------------------------------------
    def readback(self, t: Term, ctx: tuple) -> CatExpr:
        """CatExpr for term t in a context of (variable, type) pairs, read
        as the left-nested wedge of the types."""
        gamma = _gamma(ctx)
        match t:
            case Var():
                p = _path(ctx, t)
                if p is not None:
                    return p
                return mk_comp(self.var_indet(t), ter(gamma))
            case Unit():
                return ter(gamma)
            case Const(k):
                return mk_comp(Gen(k), ter(gamma))
            case Hole(ty):
                if ty != gamma:
                    return Turnstile(ty, gamma)
                return Comp(Turnstile(ty, Top), ter(ty))
            case PairT(l, r):
                return mk_pair(self.readback(l, ctx), self.readback(r, ctx))
            case Fst(a) | Snd(a):
                w = self.ne_type(a, ctx)
                proj = (Proj1 if isinstance(t, Fst) else Proj2)(w.left, w.right)
                return mk_comp(proj, self.readback(a, ctx))
            case App(Name(f), a):
                return mk_comp(f, self.readback(a, ctx))
            case App(f, a):
                ft = self.ne_type(f, ctx)
                return mk_comp(Eval(ft.left, ft.right),
                               mk_pair(self.readback(f, ctx), self.readback(a, ctx)))
            case Lam(y, body):
                return mk_star(self.readback(body, ctx + ((y, y.type),)), y.type)
            case Name(f):
                # bare names only occur in non-long terms; read via their meaning
                s, u = self.boundaries(f)
                return mk_star(mk_comp(f, Proj2(gamma, s)), s)
        raise MalformedExpr("cannot read back %r" % (t,))

    def ne_type(self, t: Term, ctx=()) -> CatExpr:
        match t:
            case Var():
                return t.type
            case Const(k):
                return self.const_type(k)
            case Hole(ty):
                return ty
            case Name(f):
                s, u = self.boundaries(f)
                return Turnstile(s, u)
            case Fst(a):
                return self.ne_type(a, ctx).left
            case Snd(a):
                return self.ne_type(a, ctx).right
            case App(f, _):
                return self.ne_type(f, ctx).right
        raise IllTyped("not a neutral term: %r" % (t,), t)


def _identity(v):
    return v


def _structural(e: CatExpr) -> bool:
    return e is Top or isinstance(e, (Wedge, Turnstile, Id))


def _gamma(ctx: tuple) -> CatExpr:
    g = ctx[0][1]
    for _, ty in ctx[1:]:
        g = Wedge(g, ty)
    return g


def _path(ctx: tuple, v: Var):
    if ctx[-1][0] == v:
        if len(ctx) == 1:
            return Id(ctx[0][1])
        return Proj2(_gamma(ctx[:-1]), ctx[-1][1])
    if len(ctx) == 1:
        return None
    inner = _path(ctx[:-1], v)
    if inner is None:
        return None
    return mk_comp(inner, Proj1(_gamma(ctx[:-1]), ctx[-1][1]))


# ---------------------------------------------------------------------------
# smart constructors used by readback

def factors(e: CatExpr) -> list[CatExpr]:
    if isinstance(e, Comp):
        return factors(e.left) + factors(e.right)
    return [e]


def from_factors(fs: list[CatExpr]) -> CatExpr:
    out = fs[0]
    for f in fs[1:]:
        out = Comp(out, f)
    return out


def mk_comp(a: CatExpr, b: CatExpr) -> CatExpr:
    fs = [f for f in factors(a) + factors(b) if not isinstance(f, Id)]
    if not fs:
        return a if isinstance(a, Id) and not isinstance(b, Id) else b
    return from_factors(fs)


def mk_pair(f: CatExpr, g: CatExpr) -> CatExpr:
    ff, gf = factors(f), factors(g)
    for i, p in enumerate(ff):
        if not isinstance(p, Proj1):
            continue
        tail = ff[i + 1:]
        j = len(gf) - len(tail) - 1
        if j < 0 or gf[j] != Proj2(p.left, p.right) or gf[j + 1:] != tail:
            continue
        left = from_factors(ff[:i]) if i else Id(p.left)
        right = from_factors(gf[:j]) if j else Id(p.right)
        if isinstance(left, Id) and isinstance(right, Id):
            core = Id(Wedge(p.left, p.right))
        else:
            core = Wedge(left, right)
        return mk_comp(core, from_factors(tail)) if tail else core
    return Pair(f, g)


def mk_star(body: CatExpr, a: CatExpr) -> CatExpr:
    """``body*`` with ``(eps . (h /\\ 1))* = h`` and ``eps* = 1``."""
    fs = factors(body)
    if isinstance(body, Eval):
        return Id(Turnstile(body.left, body.right))
    if len(fs) == 2 and isinstance(fs[0], Eval) and isinstance(fs[1], Wedge) \
            and fs[1].right == Id(fs[0].left):
        return fs[1].left
    return Star(body)


# ---------------------------------------------------------------------------
# convenience

def engine(sig: Signature) -> Engine:
    return Engine(sig)


def normalize(e: CatExpr, sig: Signature) -> CatExpr:
    return Engine(sig).normalize(e)
