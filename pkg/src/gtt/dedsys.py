"""Positive intuitionistic deductive systems: validity and proof search.

A *goal* ``p |- q`` asks for a valid path from p to q.  Inside an element,
``f |- g`` is the arrow g -> f, valid when some valid path g -> f exists.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import gencat
from .errors import DepthExceeded, MalformedExpr
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge, ter)
from .nbe import Engine
from .signature import Signature


@dataclass(frozen=True)
class Derivation:
    rule: str
    expr: CatExpr
    premises: tuple = ()

    def replay(self) -> CatExpr:
        """Rebuild the conclusion from the premises alone."""
        p = [d.replay() for d in self.premises]
        match self.rule:
            case "id" | "ter" | "seed" | "proj1" | "proj2" | "assumption" | "kappa" | "given":
                return self.expr
            case "pair":
                return Pair(p[0], p[1])
            case "star":
                return Star(p[0])
            case "comp":
                return _comp(p[0], p[1])
            case "eval":
                return Comp(Eval(self.expr.left.left, self.expr.left.right), Pair(p[0], p[1]))
        raise MalformedExpr("unknown rule %r" % self.rule)


@dataclass(frozen=True)
class Witness:
    expr: CatExpr
    conclusion: tuple
    derivation: Derivation


@dataclass
class DeductiveSystem:
    sig: Signature
    intuitionistic: bool = True
    valid_indets: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.engine = Engine(self.sig)

    def with_indet(self, x: Indet) -> "DeductiveSystem":
        """The system extended by a valid indeterminate (adjoining x)."""
        return DeductiveSystem(self.sig, self.intuitionistic, self.valid_indets | {x})

    def tnf(self, e):
        return self.engine.tnf(e)

    def seeds(self) -> list[tuple[CatExpr, CatExpr, CatExpr]]:
        """Valid generating arrows as (expr, source, target)."""
        out = []
        for v in self.sig.valid:
            if isinstance(v, Gen) and not self.sig.is_object(v.name):
                s, t = self.engine.boundaries(v)
                out.append((v, s, t))
            elif isinstance(v, Turnstile):
                # a declared valid type p |- q, used as a generic path p -> q
                p, q = self.tnf(v.left), self.tnf(v.right)
                out.append((Turnstile(q, p), p, q))
        for x in sorted(self.valid_indets, key=lambda i: i.name):
            out.append((x, Top, self.tnf(x.target)))
        return out


def named_constants(ds: DeductiveSystem, a: CatExpr, b: CatExpr):
    """(ter_a, pi_{a,b}, pi'_{a,b}, eps_{a,b})."""
    return ter(a), Proj1(a, b), Proj2(a, b), Eval(a, b)


# ---------------------------------------------------------------------------
# search

class _Search:
    def __init__(self, ds: DeductiveSystem):
        self.ds = ds
        self.seeds = ds.seeds()
        self.failed: dict[tuple, int] = {}
        self.cut = False

    def solve(self, a, b, depth):
        if depth <= 0:
            self.cut = True
            return None
        key = (a, b)
        if self.failed.get(key, -1) >= depth:
            return None
        d = self._solve(a, b, depth)
        if d is None:
            self.failed[key] = max(self.failed.get(key, -1), depth)
        return d

    def _solve(self, a, b, depth):
        if b is Top:
            return Derivation("ter", ter(a))
        if a == b:
            return Derivation("id", Id(a))
        if isinstance(b, Wedge):
            l = self.solve(a, b.left, depth - 1)
            if l is None:
                return None
            r = self.solve(a, b.right, depth - 1)
            if r is None:
                return None
            return Derivation("pair", Pair(l.expr, r.expr), (l, r))
        if isinstance(b, Turnstile):
            body = self.solve(Wedge(a, b.left), b.right, depth - 1)
            if body is None:
                return None
            return Derivation("star", Star(body.expr), (body,))
        # atomic goal: use a hypothesis in a or a valid seed
        for path in _components(a):
            d = self.elim(path, b, a, depth - 1)
            if d is not None:
                return d
        for expr, s, t in self.seeds:
            arg = self.solve(a, s, depth - 1) if s is not Top else Derivation("ter", ter(a))
            if arg is None:
                continue
            start = Derivation("comp", _comp(expr, arg.expr),
                               (Derivation("seed", expr), arg))
            d = self.elim(start, b, a, depth - 1)
            if d is not None:
                return d
        return None

    def elim(self, fact: Derivation, b, ctx, depth):
        """Use ``fact : ctx -> T`` to reach b by projections and evaluation."""
        if depth < 0:
            self.cut = True
            return None
        t = self.ds.engine.boundaries(fact.expr)[1]
        if t == b:
            return fact
        if isinstance(t, Wedge):
            for proj in (Proj1(t.left, t.right), Proj2(t.left, t.right)):
                rule = "proj1" if isinstance(proj, Proj1) else "proj2"
                nxt = Derivation("comp", _comp(proj, fact.expr), (Derivation(rule, proj), fact))
                d = self.elim(nxt, b, ctx, depth - 1)
                if d is not None:
                    return d
        if isinstance(t, Turnstile) and _reaches(t.right, b):
            arg = self.solve(ctx, t.left, depth)
            if arg is not None:
                ev = Comp(Eval(t.left, t.right), Pair(fact.expr, arg.expr))
                nxt = Derivation("eval", ev, (fact, arg))
                return self.elim(nxt, b, ctx, depth - 1)
        return None


def _comp(a: CatExpr, b: CatExpr) -> CatExpr:
    if isinstance(b, Id):
        return a
    if isinstance(a, Id):
        return b
    return Comp(a, b)


def _components(a: CatExpr):
    """Hypotheses of a context type: ``a`` itself, read as a fact ctx -> a."""
    yield Derivation("assumption", Id(a))


def _reaches(t: CatExpr, b: CatExpr) -> bool:
    if t == b:
        return True
    if isinstance(t, Wedge):
        return _reaches(t.left, b) or _reaches(t.right, b)
    if isinstance(t, Turnstile):
        return _reaches(t.right, b)
    return False


def inhabit(a: CatExpr, b: CatExpr, ds: DeductiveSystem, depth: int = 12) -> "Witness | None":
    """Search for a valid path a -> b, deepening up to ``depth``."""
    a, b = ds.tnf(a), ds.tnf(b)
    hit_cut = False
    for d in range(1, depth + 1):
        s = _Search(ds)
        der = s.solve(a, b, d)
        if der is not None:
            return Witness(der.expr, (a, b), der)
        hit_cut = s.cut
        if not hit_cut:
            return None
    if hit_cut:
        raise DepthExceeded("no witness for %r |- %r within depth %d" % (a, b, depth))
    return None


# ---------------------------------------------------------------------------
# validity

def is_valid(e: CatExpr, ds: DeductiveSystem, depth: int = 12) -> bool:
    """Top-level ``p |- q`` is read as a goal; anything else is checked as a
    valid element built from valid pieces."""
    if isinstance(e, Turnstile):
        p, q = ds.tnf(e.left), ds.tnf(e.right)
        if p == q or q is Top:
            return True
        return inhabit(p, q, ds, depth) is not None
    if not gencat.well_formed(e, ds.sig):
        return False
    return valid_element(e, ds, depth)


def valid_element(e: CatExpr, ds: DeductiveSystem, depth: int = 12) -> bool:
    sig = ds.sig
    if e is Top or isinstance(e, (Id, Proj1, Proj2, Eval)):
        return True
    if isinstance(e, Gen):
        return sig.is_object(e.name) or e in sig.valid
    if isinstance(e, Indet):
        return e in ds.valid_indets
    if isinstance(e, Turnstile):
        hat, bar = ds.tnf(e.left), ds.tnf(e.right)
        if hat == bar or hat is Top or e in sig.valid:
            return True
        try:
            return inhabit(bar, hat, ds, depth) is not None
        except DepthExceeded:
            return False
    if isinstance(e, (Comp, Pair, Wedge, Star)):
        return all(valid_element(c, ds, depth) for c in e.children)
    return False


def replays(w: Witness, ds: DeductiveSystem) -> bool:
    """The derivation rebuilds the witness, which is valid with the claimed
    boundaries."""
    if w.derivation.replay() != w.expr:
        return False
    if ds.engine.boundaries(w.expr) != w.conclusion:
        return False
    return valid_element(w.expr, ds)
