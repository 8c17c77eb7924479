"""Free ideal cartesian closed categories over a signature.

Equality is decided by normalization by evaluation (``nbe``).  A separate
first-order rewriter (``rewrite`` / ``one_step``) implements the oriented
axioms directly; it is sound for the NbE model but not complete, and is used
as an independent oracle and for explaining normal forms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .errors import GttError, MalformedExpr
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge, ter)
from .nbe import Engine, factors, from_factors
from .signature import Signature

# The ideal signature is the plain signature: its ``constants`` field is the
# constant set, and top is always treated as a constant.
IdealSignature = Signature


@dataclass(frozen=True)
class IcccArrow:
    expr: CatExpr
    source: CatExpr
    target: CatExpr


def in_K(e: CatExpr, sig: Signature) -> bool:
    """Membership in the constant set: top, declared constants, and the
    closure under wedge, pairing and star."""
    if e is Top or (isinstance(e, Id) and e.arg is Top):
        return True
    if isinstance(e, Gen):
        return sig.is_constant(e.name)
    if isinstance(e, (Wedge, Pair)):
        return in_K(e.left, sig) and in_K(e.right, sig)
    if isinstance(e, Star):
        return in_K(e.arg, sig)
    if isinstance(e, Comp):
        return in_K(factors(e)[0], sig)
    return False


def normalize(e: CatExpr, sig: Signature, engine: "Engine | None" = None) -> IcccArrow:
    eng = engine or Engine(sig)
    s, t = eng.boundaries(e)
    return IcccArrow(eng.normalize(e), s, t)


def normal_form(e: CatExpr, sig: Signature, engine: "Engine | None" = None) -> CatExpr:
    return (engine or Engine(sig)).normalize(e)


def equal(e1: CatExpr, e2: CatExpr, sig: Signature, engine: "Engine | None" = None) -> bool:
    eng = engine or Engine(sig)
    if eng.boundaries(e1) != eng.boundaries(e2):
        return False
    if e1 == e2:
        return True
    return eng.normalize(e1) == eng.normalize(e2)


def good_pair(a: CatExpr, b: CatExpr, sig: Signature = None) -> tuple[CatExpr, CatExpr]:
    return Proj1(a, b), Proj2(a, b)


def good_eval(a: CatExpr, b: CatExpr, sig: Signature = None) -> CatExpr:
    return Eval(a, b)


def name(f: "CatExpr | IcccArrow", sig: Signature, engine: "Engine | None" = None) -> CatExpr:
    """The name of f : a -> b, a global element top -> (a |- b)."""
    eng = engine or Engine(sig)
    e = f.expr if isinstance(f, IcccArrow) else f
    a, _ = eng.boundaries(e)
    return eng.normalize(Star(Comp(e, Proj2(Top, a))))


# ---------------------------------------------------------------------------
# morphisms

@dataclass
class IcccMorphism:
    src: Signature
    dst: Signature
    mapping: dict[str, CatExpr] = field(default_factory=dict)
    indet_images: dict = field(default_factory=dict)

    @classmethod
    def identity(cls, sig: Signature) -> "IcccMorphism":
        return cls(sig, sig, {n: Gen(n) for n in sig.generators})

    def __call__(self, e: CatExpr) -> CatExpr:
        return apply_morphism(self, e)

    def check(self) -> list[str]:
        """Structural problems with the mapping (empty when it is a morphism)."""
        problems = []
        dst_eng = Engine(self.dst)
        for n in self.src.generators:
            if n not in self.mapping:
                problems.append("no image for %s" % n)
                continue
            try:
                img = self.mapping[n]
                s_img, t_img = dst_eng.boundaries(img)
                s, t = self.src.boundaries(n)
            except MalformedExpr as exc:
                problems.append("%s: %s" % (n, exc))
                continue
            if self.src.is_object(n):
                continue
            if dst_eng.tnf(_extend(self, s)) != s_img or dst_eng.tnf(_extend(self, t)) != t_img:
                problems.append("%s: boundaries not preserved" % n)
            if self.src.is_constant(n) and not in_K(img, self.dst):
                problems.append("%s: constant sent outside the constant set" % n)
        return problems


def _extend(F: IcccMorphism, e: CatExpr) -> CatExpr:
    if isinstance(e, Gen):
        try:
            return F.mapping[e.name]
        except KeyError:
            raise MalformedExpr("morphism undefined on %r" % e.name) from None
    if isinstance(e, Indet):
        if e in F.indet_images:
            return F.indet_images[e]
        return Indet(e.name, _extend(F, e.target))
    if e is Top:
        return e
    return e.rebuild([_extend(F, c) for c in e.children])


def apply_morphism(F: IcccMorphism, e: CatExpr, engine: "Engine | None" = None) -> CatExpr:
    """Homomorphic image of e, normalized in the target."""
    return (engine or Engine(F.dst)).normalize(_extend(F, e))


# ---------------------------------------------------------------------------
# first-order rewriting

_TYPE_SLOTS = (Proj1, Proj2, Eval, Id, Turnstile)


class Rewriter:
    """Oriented axioms as one-step rewrites on left-associated chains."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.eng = Engine(sig)

    def bnd(self, e):
        return self.eng.boundaries(e)

    # guards ---------------------------------------------------------------
    def _collapses(self, f: CatExpr) -> bool:
        """f applied to a generic element of its source is generic."""
        for n in f.walk():
            if isinstance(n, (Indet, Star, Eval)):
                return False
            if isinstance(n, Gen) and not self.sig.is_object(n.name):
                if self.eng.tnf(self.sig.boundaries(n.name)[0]) is Top:
                    return False
        return not any(isinstance(n, Turnstile) for n in self.bnd(f)[1].walk())

    # steps ----------------------------------------------------------------
    def steps(self, e: CatExpr) -> Iterator[CatExpr]:
        """All one-step rewrites of e (root first, then inside children)."""
        yield from self._root(e)
        if isinstance(e, Comp):
            fs = factors(e)
            for i, f in enumerate(fs):
                for g in self.steps(f):
                    yield _chain(fs[:i] + [g] + fs[i + 1:])
            return
        if isinstance(e, _TYPE_SLOTS):
            # annotations are types: they are equal up to type normal form
            kids = tuple(self.eng.tnf(c) for c in e.children)
            if kids != e.children:
                yield e.rebuild(kids)
            return
        if isinstance(e, (Gen, Indet)) or e is Top:
            return
        kids = e.children
        for i, c in enumerate(kids):
            for g in self.steps(c):
                yield e.rebuild(kids[:i] + (g,) + kids[i + 1:])

    def expansions(self, e: CatExpr) -> Iterator[CatExpr]:
        """Reverse (expanding) steps used by the closure oracle only: pair
        and star extensionality, generic arrows through top, and
        rebracketing of composites."""
        yield from self._expand_root(e)
        if isinstance(e, (Gen, Indet)) or e is Top or isinstance(e, _TYPE_SLOTS):
            return
        kids = e.children
        for i, c in enumerate(kids):
            for g in self.expansions(c):
                yield e.rebuild(kids[:i] + (g,) + kids[i + 1:])

    def _expand_root(self, e: CatExpr) -> Iterator[CatExpr]:
        for cand in self._expand_candidates(e):
            try:
                self.bnd(cand)
            except GttError:
                continue
            yield cand

    def _expand_candidates(self, e: CatExpr) -> Iterator[CatExpr]:
        eng = self.eng
        if isinstance(e, Comp):
            flat = _chain(factors(e))
            if flat != e:
                yield flat
        s, t = self.bnd(e)
        if isinstance(t, Wedge) and not isinstance(e, Pair):
            yield Pair(Comp(Proj1(t.left, t.right), e), Comp(Proj2(t.left, t.right), e))
        if isinstance(t, Turnstile) and not isinstance(e, Star):
            yield Star(Comp(Eval(t.left, t.right), Wedge(e, Id(t.left))))
        if isinstance(e, Turnstile):
            hat, bar = eng.tnf(e.left), eng.tnf(e.right)
            if hat != bar and hat is not Top and bar is not Top:
                yield Comp(Turnstile(e.left, Top), Turnstile(Top, e.right))

    def _root(self, e: CatExpr) -> Iterator[CatExpr]:
        sig, eng = self.sig, self.eng
        if isinstance(e, Gen) and sig.is_object(e.name):
            yield Id(e)
            return
        if e is Top:
            yield Id(Top)
            return
        s, t = self.bnd(e)
        if t is Top and e != ter(s) and not (isinstance(e, Id) and e.arg is Top):
            yield ter(s)
        if isinstance(e, Turnstile) and eng.tnf(e.left) == eng.tnf(e.right) \
                and not isinstance(e.left, Id):
            yield Id(e.left)
        if isinstance(e, Comp):
            yield from self._chain_steps(factors(e))
        elif isinstance(e, Pair):
            yield from self._pair_steps(e)
        elif isinstance(e, Wedge):
            if isinstance(e.left, Id) and isinstance(e.right, Id):
                yield Id(Wedge(e.left.arg, e.right.arg))
        elif isinstance(e, Star):
            body = e.arg
            if isinstance(body, Eval):
                yield Id(Turnstile(body.left, body.right))
            fs = factors(body)
            if len(fs) == 2 and isinstance(fs[0], Eval) and isinstance(fs[1], Wedge) \
                    and self._is_id(fs[1].right):
                yield fs[1].left

    def _is_id(self, e):
        return isinstance(e, Id) or (isinstance(e, Gen) and self.sig.is_object(e.name)) \
            or e is Top

    def _pair_steps(self, e: Pair):
        ff, gf = factors(e.left), factors(e.right)
        for i, p in enumerate(ff):
            if not isinstance(p, Proj1):
                continue
            tail = ff[i + 1:]
            j = len(gf) - len(tail) - 1
            if j < 0 or gf[j] != Proj2(p.left, p.right) or gf[j + 1:] != tail:
                continue
            left = _chain(ff[:i]) if i else Id(p.left)
            right = _chain(gf[:j]) if j else Id(p.right)
            core = Wedge(left, right)
            yield _chain([core] + tail) if tail else core

    def _chain_steps(self, fs: list[CatExpr]):
        for i, f in enumerate(fs):
            if self._is_id(f) and len(fs) > 1:
                yield _chain(fs[:i] + fs[i + 1:])
        for i in range(len(fs) - 1):
            x, y = fs[i], fs[i + 1]
            for rep in self._pair_rule(x, y):
                yield _chain(fs[:i] + rep + fs[i + 2:])

    def _pair_rule(self, x: CatExpr, y: CatExpr):
        eng = self.eng
        if isinstance(x, (Proj1, Proj2)) and isinstance(y, Pair):
            yield [y.left if isinstance(x, Proj1) else y.right]
        if isinstance(x, (Proj1, Proj2)) and isinstance(y, Wedge):
            (sl, _), (sr, _) = self.bnd(y.left), self.bnd(y.right)
            if isinstance(x, Proj1):
                yield [y.left, Proj1(sl, sr)]
            else:
                yield [y.right, Proj2(sl, sr)]
        if isinstance(x, Pair):
            yield [Pair(_chain([x.left, y]), _chain([x.right, y]))]
        if isinstance(x, Wedge) and isinstance(y, Wedge):
            yield [Wedge(_chain([x.left, y.left]), _chain([x.right, y.right]))]
        if isinstance(x, Wedge) and isinstance(y, Pair):
            yield [Pair(_chain([x.left, y.left]), _chain([x.right, y.right]))]
        if isinstance(x, Eval):
            if isinstance(y, Wedge) and isinstance(y.left, Star) and self._is_id(y.right):
                yield [y.left.arg]
            if isinstance(y, Pair):
                hf = factors(y.left)
                if isinstance(hf[0], Star):
                    m = _chain(hf[1:]) if len(hf) > 1 else Id(self.bnd(hf[0])[0])
                    yield [hf[0].arg, Pair(m, y.right)]
        if isinstance(x, Star):
            src = self.bnd(x.arg)[0]
            if isinstance(src, Wedge):
                yield [Star(_chain([x.arg, Wedge(y, Id(src.right))]))]
        if isinstance(y, Turnstile):
            hat, bar = eng.tnf(y.left), eng.tnf(y.right)
            sx, tx = self.bnd(x)
            if hat == sx and bar != hat and hat is not Top and tx != bar \
                    and self._collapses(x):
                yield [Turnstile(tx, y.right)]
        if isinstance(x, Turnstile):
            hat, bar = eng.tnf(x.left), eng.tnf(x.right)
            sy, ty = self.bnd(y)
            if bar == ty and hat != bar and hat != sy:
                yield [Turnstile(x.left, sy)] if hat is not Top else [ter(sy)]

    # normalizer -------------------------------------------------------------
    def rewrite(self, e: CatExpr, limit: int = 10_000) -> CatExpr:
        for _ in range(limit):
            nxt = next(iter(self.steps(e)), None)
            if nxt is None:
                return e
            e = nxt
        return e


def _chain(fs: list[CatExpr]) -> CatExpr:
    flat = []
    for f in fs:
        flat.extend(factors(f))
    return from_factors(flat)


def rewrite(e: CatExpr, sig: Signature) -> CatExpr:
    return Rewriter(sig).rewrite(e)


def weight(e: CatExpr) -> int:
    """Size with every type annotation counted as one node."""
    if isinstance(e, (Proj1, Proj2, Eval)):
        return 1
    if isinstance(e, (Id, Turnstile)):
        return 1 + len(e.children)
    return 1 + sum(weight(c) for c in e.children)


def rewrite_closure_classes(exprs, sig: Signature, slack: int = 0) -> dict:
    """Union-find over ``exprs`` joined by one-step rewrites: the
    bidirectional rewriting closure.  Intermediate terms may exceed the
    largest input by ``slack`` nodes; only inputs are returned."""
    rw = Rewriter(sig)
    inputs = list(exprs)
    bound = max((weight(e) for e in inputs), default=0) + slack
    universe = set(inputs)
    todo = list(universe)
    while slack and todo:
        e = todo.pop()
        for nxt in itertools.chain(rw.steps(e), rw.expansions(e)):
            if nxt not in universe and weight(nxt) <= bound:
                universe.add(nxt)
                todo.append(nxt)
    parent = {e: e for e in universe}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for e in universe:
        for nxt in itertools.chain(rw.steps(e), rw.expansions(e) if slack else ()):
            if nxt in universe:
                ra, rb = find(e), find(nxt)
                if ra is not rb:
                    parent[ra] = rb
    return {e: find(e) for e in inputs}
