"""Polynomial extensions by indeterminates and abstraction elimination.

``kappa`` follows the case table of the deduction theorem literally and
returns an unnormalized expression; ``epsilon_x`` and ``lambda_x`` return
normal forms.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (DepthExceeded, MalformedExpr, NotAPath, NotClosedSource,
                     TargetMismatch, UnknownIndeterminate)
from .expr import (CatExpr, Comp, Id, Indet, Pair, Proj1, Proj2, Star, Top,
                   Wedge, has_indet, indets, ter)
from .iccc import IcccMorphism, _extend, name
from .nbe import Engine
from .signature import Signature


@dataclass(frozen=True)
class Polynomial:
    expr: CatExpr
    context: tuple = ()

    def __post_init__(self):
        for x in indets(self.expr):
            if self.context and x not in self.context:
                raise UnknownIndeterminate("%s is not in the context" % x.name)


def _expr(p) -> CatExpr:
    return p.expr if isinstance(p, Polynomial) else p


def _assoc(x: CatExpr, c: CatExpr, a: CatExpr) -> CatExpr:
    """(x /\\ c) /\\ a -> x /\\ (c /\\ a), built from projections."""
    xc = Wedge(x, c)
    p, q = Proj1(xc, a), Proj2(xc, a)
    return Pair(Comp(Proj1(x, c), p), Pair(Comp(Proj2(x, c), p), q))


def kappa(x: Indet, phi, sig: Signature, engine: "Engine | None" = None) -> CatExpr:
    """kappa_x(phi) : x^ /\\ a -> b for a path phi : a -> b of A[x]."""
    eng = engine or Engine(sig)
    phi = _expr(phi)
    X = eng.tnf(x.target)
    return _kappa(x, X, phi, eng)


def _base_boundaries(e, eng):
    try:
        s, t = eng.boundaries(e)
    except MalformedExpr as exc:
        raise NotAPath(str(exc)) from None
    if has_indet(s) or has_indet(t):
        raise NotAPath("boundaries of %r are not in the base" % (e,))
    return s, t


def _kappa(x, X, phi, eng) -> CatExpr:
    a, b = _base_boundaries(phi, eng)
    if not has_indet(phi, x):
        return Comp(phi, Proj2(X, a))
    if phi == x:
        return Proj1(X, Top)
    if isinstance(phi, Comp):
        psi, chi = phi.left, phi.right
        c = _base_boundaries(chi, eng)[0]
        return Comp(_kappa(x, X, psi, eng), Pair(Proj1(X, c), _kappa(x, X, chi, eng)))
    if isinstance(phi, Wedge):
        a1, _ = _base_boundaries(phi.left, eng)
        a2, _ = _base_boundaries(phi.right, eng)
        as_pair = Pair(Comp(phi.left, Proj1(a1, a2)), Comp(phi.right, Proj2(a1, a2)))
        return _kappa(x, X, as_pair, eng)
    if isinstance(phi, Pair):
        return Pair(_kappa(x, X, phi.left, eng), _kappa(x, X, phi.right, eng))
    if isinstance(phi, Star):
        src, _ = _base_boundaries(phi.arg, eng)
        if not isinstance(src, Wedge):
            raise NotAPath("star of an element whose source is not a wedge")
        return Star(Comp(_kappa(x, X, phi.arg, eng), _assoc(X, src.left, src.right)))
    raise NotAPath("%s cannot mention the indeterminate %s"
                   % (type(phi).__name__, x.name))


def beta(X: CatExpr) -> CatExpr:
    """<1, ter> : X -> X /\\ top."""
    return Pair(Id(X), ter(X))


def epsilon_x(x: Indet, phi, sig: Signature, engine: "Engine | None" = None) -> CatExpr:
    """The unique base g with g . x equal to phi."""
    eng = engine or Engine(sig)
    phi = _expr(phi)
    s, _ = eng.boundaries(phi)
    if s is not Top:
        raise NotClosedSource("source of %r is %r, not top" % (phi, s))
    X = eng.tnf(x.target)
    return eng.normalize(Comp(kappa(x, phi, sig, eng), beta(X)))


def lambda_x(x: Indet, phi, sig: Signature, engine: "Engine | None" = None) -> CatExpr:
    eng = engine or Engine(sig)
    return name(epsilon_x(x, phi, sig, eng), sig, eng)


def eq_x(p, q, sig: Signature, engine: "Engine | None" = None) -> bool:
    eng = engine or Engine(sig)
    p, q = _expr(p), _expr(q)
    if eng.boundaries(p) != eng.boundaries(q):
        return False
    return p == q or eng.normalize(p) == eng.normalize(q)


def replace_indet(e: CatExpr, x: Indet, a: CatExpr) -> CatExpr:
    if e == x:
        return a
    if isinstance(e, Indet) or not e.children:
        return e
    return e.rebuild([replace_indet(c, x, a) for c in e.children])


def substitute(x: Indet, a: CatExpr, p, sig: Signature,
               engine: "Engine | None" = None) -> CatExpr:
    """S_x^a(p): replace x by a, then normalize."""
    eng = engine or Engine(sig)
    _, t = eng.boundaries(a)
    if t != eng.tnf(x.target):
        raise TargetMismatch("target %r of the substituend is not %r" % (t, x.target))
    return eng.normalize(replace_indet(_expr(p), x, a))


def extend_functor(F: IcccMorphism, a: CatExpr, x: Indet) -> IcccMorphism:
    """The unique theta on C(x) with theta(x) = a and theta = F on C."""
    eng = Engine(F.dst)
    _, t = eng.boundaries(a)
    if t != eng.tnf(_extend(F, x.target)):
        raise TargetMismatch("target %r is not F(%r)" % (t, x.target))
    return IcccMorphism(F.src, F.dst, dict(F.mapping), {**F.indet_images, x: a})


# ---------------------------------------------------------------------------
# deduction theorem

def deduction_theorem(a: CatExpr, b: CatExpr, ds, x: Indet, depth: int = 12):
    """(forward, backward) witnesses.

    forward: kappa of a witness for a |- b in A[x], a base witness of
    x^ /\\ a |- b.  backward: from a base witness f of x^ /\\ a |- b, the
    witness f . <x . ter_a, 1_a> of a |- b in A[x].  Either is None when the
    corresponding search fails.
    """
    from .dedsys import Derivation, Witness
    eng = ds.engine
    a, b = eng.tnf(a), eng.tnf(b)
    X = eng.tnf(x.target)
    dsx = ds.with_indet(x)
    forward = backward = None
    w = _search(a, b, dsx, depth)
    if w is not None:
        k = kappa(x, w.expr, ds.sig, eng)
        forward = Witness(k, (Wedge(X, a), b), Derivation("kappa", k, (w.derivation,)))
    base = _search(Wedge(X, a), b, ds, depth)
    if base is not None:
        back = Comp(base.expr, Pair(Comp(x, ter(a)), Id(a)))
        backward = Witness(back, (a, b), Derivation("given", back, (base.derivation,)))
    return forward, backward


def _search(a, b, ds, depth):
    from .dedsys import inhabit
    try:
        return inhabit(a, b, ds, depth)
    except DepthExceeded:
        return None
