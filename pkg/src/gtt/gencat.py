"""Generalized categories presented by generators.

Boundaries are returned in *type normal form*: the structural reading of
``top``, ``/\\`` and ``|-`` with atoms left alone.  Under that reading the
turnstile ``f |- g`` is an element with source ``g`` and target ``f``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

from .errors import MalformedExpr, NotComposable
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge)
from .signature import Signature


# ---------------------------------------------------------------------------
# boundaries

def type_nf(e: CatExpr, sig: Signature) -> CatExpr:
    """Normal form of an element read as a boundary (a subject)."""
    if e is Top or isinstance(e, Indet):
        return e
    if isinstance(e, Gen):
        sig.boundaries(e.name)
        return e
    if isinstance(e, (Wedge, Turnstile)):
        return type(e)(type_nf(e.left, sig), type_nf(e.right, sig))
    if isinstance(e, Id):
        a = type_nf(e.arg, sig)
        return Turnstile(a, a)
    return gnf(e, sig)


def source(e: CatExpr, sig: Signature) -> CatExpr:
    return _boundaries(e, sig)[0]


def target(e: CatExpr, sig: Signature) -> CatExpr:
    return _boundaries(e, sig)[1]


def boundaries(e: CatExpr, sig: Signature) -> tuple[CatExpr, CatExpr]:
    return _boundaries(e, sig)


def _boundaries(e: CatExpr, sig: Signature) -> tuple[CatExpr, CatExpr]:
    if e is Top:
        return Top, Top
    if isinstance(e, Gen):
        s, t = sig.boundaries(e.name)
        return type_nf(s, sig), type_nf(t, sig)
    if isinstance(e, Indet):
        return Top, type_nf(e.target, sig)
    if isinstance(e, Id):
        a = type_nf(e.arg, sig)
        return a, a
    if isinstance(e, Comp):
        sa, ta = _boundaries(e.left, sig)
        sb, tb = _boundaries(e.right, sig)
        if not leq(sa, tb, sig):
            raise NotComposable(sa, tb)
        return sb, ta
    if isinstance(e, Turnstile):
        return type_nf(e.right, sig), type_nf(e.left, sig)
    if isinstance(e, Wedge):
        sa, ta = _boundaries(e.left, sig)
        sb, tb = _boundaries(e.right, sig)
        return Wedge(sa, sb), Wedge(ta, tb)
    if isinstance(e, Pair):
        sa, ta = _boundaries(e.left, sig)
        sb, tb = _boundaries(e.right, sig)
        if sa != sb:
            raise MalformedExpr("pairing needs equal sources, got %r and %r" % (sa, sb))
        return sa, Wedge(ta, tb)
    if isinstance(e, Star):
        s, t = _boundaries(e.arg, sig)
        if not isinstance(s, Wedge):
            raise MalformedExpr("star needs a wedge source, got %r" % (s,))
        return s.left, Turnstile(s.right, t)
    if isinstance(e, (Proj1, Proj2)):
        a, b = type_nf(e.left, sig), type_nf(e.right, sig)
        return Wedge(a, b), (a if isinstance(e, Proj1) else b)
    if isinstance(e, Eval):
        a, b = type_nf(e.left, sig), type_nf(e.right, sig)
        return Wedge(Turnstile(a, b), a), b
    raise MalformedExpr("unknown node %r" % (e,))


def well_formed(e: CatExpr, sig: Signature) -> bool:
    try:
        _boundaries(e, sig)
    except MalformedExpr:
        return False
    return True


def is_object(e: CatExpr, sig: Signature) -> bool:
    """s(e) = t(e) = e, read structurally."""
    if e is Top:
        return True
    if isinstance(e, Gen):
        return sig.is_object(e.name)
    if isinstance(e, Wedge):
        return is_object(e.left, sig) and is_object(e.right, sig)
    return False


def is_identity(e: CatExpr, sig: Signature) -> bool:
    if isinstance(e, Id) or is_object(e, sig):
        return True
    return isinstance(e, Turnstile) and type_nf(e.left, sig) == type_nf(e.right, sig)


# ---------------------------------------------------------------------------
# composition

def compose(a: CatExpr, b: CatExpr, sig: Signature) -> CatExpr:
    """``a . b`` with identity absorption and left-associated flattening."""
    sa = source(a, sig)
    tb = target(b, sig)
    if not leq(sa, tb, sig):
        raise NotComposable(sa, tb)
    return gnf(Comp(a, b), sig)


def gnf(e: CatExpr, sig: Signature) -> CatExpr:
    """Generalized-category normal form: only laws (3), (5), (6) are used."""
    if isinstance(e, Comp):
        factors = [f for f in _factors(e, sig) if not is_identity(f, sig)]
        if not factors:
            return _identity_on(target(e, sig))
        out = factors[0]
        for f in factors[1:]:
            out = Comp(out, f)
        return out
    if is_identity(e, sig):
        return _identity_on(source(e, sig))
    if isinstance(e, (Gen, Indet)) or e is Top:
        return e
    return e.rebuild([gnf(c, sig) if _is_element_slot(e, i) else type_nf(c, sig)
                      for i, c in enumerate(e.children)])


def _identity_on(a: CatExpr) -> CatExpr:
    return Id(a)


def _is_element_slot(e: CatExpr, i: int) -> bool:
    return not isinstance(e, (Proj1, Proj2, Eval, Turnstile, Id))


def _factors(e: CatExpr, sig: Signature) -> list[CatExpr]:
    if isinstance(e, Comp):
        return _factors(e.left, sig) + _factors(e.right, sig)
    return [gnf(e, sig)]


# ---------------------------------------------------------------------------
# order

class _Order:
    """Reflexive-transitive congruence closure of the declared pairs."""

    def __init__(self, sig: Signature):
        pairs = set()
        frontier = [(type_nf(a, sig), type_nf(b, sig)) for a, b in sig.order]
        while frontier:
            a, b = frontier.pop()
            if a == b or (a, b) in pairs:
                continue
            pairs.add((a, b))
            try:
                sa, ta = _boundaries(a, sig)
                sb, tb = _boundaries(b, sig)
            except MalformedExpr:
                continue
            frontier += [(sa, sb), (ta, tb)]
        changed = True
        while changed:
            changed = False
            for a, b in list(pairs):
                for c, d in list(pairs):
                    if b == c and a != d and (a, d) not in pairs:
                        pairs.add((a, d))
                        changed = True
        for a, b in pairs:
            if (b, a) in pairs:
                raise MalformedExpr("order is not antisymmetric: %r and %r" % (a, b))
        self.pairs = frozenset(pairs)
        self.above: dict[CatExpr, set] = {}
        for a, b in pairs:
            self.above.setdefault(a, set()).add(b)

    def leq(self, a: CatExpr, b: CatExpr) -> bool:
        if a == b or (a, b) in self.pairs:
            return True
        if self._struct(a, b):
            return True
        for c in self.above.get(a, ()):
            if self._struct(c, b):
                return True
        return any(self._struct(a, c) for c, d in self.pairs if d == b)

    def _struct(self, a: CatExpr, b: CatExpr) -> bool:
        if a == b:
            return True
        if type(a) is not type(b) or not isinstance(a, (Comp, Id)):
            return False
        return all(self.leq(x, y) for x, y in zip(a.children, b.children))


@lru_cache(maxsize=64)
def _order_for(key) -> _Order:
    return _Order(key[1])


def _order(sig: Signature) -> "_Order | None":
    if not sig.order:
        return None
    cached = getattr(sig, "_order_cache", None)
    stamp = tuple(sig.order)
    if cached is None or cached[0] != stamp:
        cached = (stamp, _Order(sig))
        object.__setattr__(sig, "_order_cache", cached)
    return cached[1]


def leq(a: CatExpr, b: CatExpr, sig: Signature) -> bool:
    order = _order(sig)
    if order is None:
        return a == b
    return order.leq(a, b)


# ---------------------------------------------------------------------------
# law checking on finite data

@dataclass
class Violation:
    law: str
    witness: object
    detail: str = ""


@dataclass
class LawReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, law, witness, detail=""):
        self.violations.append(Violation(law, witness, detail))


def extend(mapping: Mapping[str, CatExpr], e: CatExpr) -> CatExpr:
    """Homomorphic extension of a generator mapping to all expressions."""
    if isinstance(e, Gen):
        if e.name not in mapping:
            raise MalformedExpr("mapping is not total: missing %r" % e.name)
        return mapping[e.name]
    if isinstance(e, Indet) or e is Top:
        return e
    return e.rebuild([extend(mapping, c) for c in e.children])


def _generator_exprs(sig: Signature) -> list[CatExpr]:
    return [Gen(n) for n in sig.generators]


def _composable_pairs(sig, gens, samples, rng, bound):
    pairs = [(g, f) for g in gens for f in gens
             if leq(source(g, sig), target(f, sig), sig)]
    if len(pairs) > bound:
        pairs = rng.sample(pairs, min(samples, len(pairs)))
    extra = []
    for _ in range(samples):
        chain = [rng.choice(gens)]
        for _ in range(rng.randint(1, 3)):
            nxt = [g for g in gens if leq(source(g, sig), target(chain[-1], sig), sig)]
            if not nxt:
                break
            chain.append(rng.choice(nxt))
        if len(chain) >= 2:
            e = chain[0]
            for g in chain[1:]:
                e = Comp(g, e)
            extra.append((e.left, e.right))
    return pairs + extra


def check_functor(F: Mapping[str, CatExpr], src: Signature, dst: Signature,
                  samples: int = 100, seed: int = 0, bound: int = 10**5) -> LawReport:
    report = LawReport()
    rng = random.Random(seed)
    gens = _generator_exprs(src)
    missing = [n for n in src.generators if n not in F]
    for n in missing:
        report.fail("total", n, "no image for generator")
    if missing:
        return report
    for g in gens:
        report.checked += 1
        img = extend(F, g)
        try:
            s_img, t_img = boundaries(img, dst)
        except MalformedExpr as exc:
            report.fail("well-formed", g, str(exc))
            continue
        s, t = boundaries(g, src)
        if type_nf(extend(F, s), dst) != s_img:
            report.fail("F(source f) = source F(f)", g, "%r vs %r" % (extend(F, s), s_img))
        if type_nf(extend(F, t), dst) != t_img:
            report.fail("F(target f) = target F(f)", g, "%r vs %r" % (extend(F, t), t_img))
    if not report.ok:
        return report
    for g, f in _composable_pairs(src, gens, samples, rng, bound):
        report.checked += 1
        try:
            lhs = gnf(extend(F, Comp(g, f)), dst)
            rhs = compose(extend(F, g), extend(F, f), dst)
        except MalformedExpr as exc:
            report.fail("F(gf) = F(g)F(f)", (g, f), str(exc))
            continue
        if lhs != rhs:
            report.fail("F(gf) = F(g)F(f)", (g, f), "%r vs %r" % (lhs, rhs))
    return report


Component = Callable[[CatExpr], "CatExpr | None"]


def _component(theta: Mapping[CatExpr, CatExpr], e: CatExpr, sig: Signature):
    for key in (e, gnf(e, sig)):
        if key in theta:
            return theta[key]
    if isinstance(e, Id) and e.arg in theta:
        return theta[e.arg]
    if is_object(e, sig) and Id(e) in theta:
        return theta[Id(e)]
    return None


def _same(a: CatExpr, b: CatExpr, sig: Signature) -> bool:
    return gnf(a, sig) == gnf(b, sig)


def _naturality(name, theta, F, G, elems, sig_src, sig_dst, report):
    """theta(t f) . F(f) = G(f) . theta(s f) for every sampled element f."""
    for f in elems:
        report.checked += 1
        s, t = boundaries(f, sig_src)
        th_t, th_s = _component(theta, t, sig_src), _component(theta, s, sig_src)
        if th_t is None or th_s is None:
            report.fail(name + " naturality", f, "component undefined on a boundary")
            continue
        try:
            lhs = compose(th_t, F(f), sig_dst)
            rhs = compose(G(f), th_s, sig_dst)
        except MalformedExpr as exc:
            report.fail(name + " naturality", f, str(exc))
            continue
        if lhs != rhs:
            report.fail(name + " naturality", f, "%r vs %r" % (lhs, rhs))


def _domain(sig, samples, rng, bound):
    elems = _generator_exprs(sig)
    if len(elems) > bound:
        elems = rng.sample(elems, samples)
    return elems


def _law_domain(elems, sig, *components):
    """Pointwise laws are checked on objects and on every element carrying an
    explicit component; elsewhere a component is the naturality diagonal and
    the law follows from the object case."""
    return [f for f in elems
            if is_object(f, sig) or any(f in th for th in components)]


def check_monad_laws(T: Mapping[str, CatExpr], eta: Mapping[CatExpr, CatExpr],
                     mu: Mapping[CatExpr, CatExpr], sig: Signature,
                     samples: int = 100, seed: int = 0, bound: int = 10**5) -> LawReport:
    report = LawReport()
    rng = random.Random(seed)
    elems = _domain(sig, samples, rng, bound)

    def Tf(e):
        return extend(T, e)

    def TT(e):
        return Tf(Tf(e))
    _naturality("eta", eta, lambda e: e, Tf, elems, sig, sig, report)
    _naturality("mu", mu, TT, Tf, elems, sig, sig, report)
    for f in _law_domain(elems, sig, eta, mu):
        report.checked += 1
        mu_f = _component(mu, f, sig)
        eta_f = _component(eta, f, sig)
        mu_Tf = _component(mu, Tf(f), sig)
        eta_Tf = _component(eta, Tf(f), sig)
        if None in (mu_f, eta_f, mu_Tf, eta_Tf):
            report.fail("defined", f, "eta or mu undefined at f or T(f)")
            continue
        try:
            assoc_l = compose(mu_f, Tf(mu_f), sig)
            assoc_r = compose(mu_f, mu_Tf, sig)
            if not _same(assoc_l, assoc_r, sig):
                report.fail("mu . T(mu) = mu . mu(T)", f, "%r vs %r" % (assoc_l, assoc_r))
            unit = Id(type_nf(target(Tf(f), sig), sig)) if not is_identity(Tf(f), sig) else Tf(f)
            one = gnf(unit, sig)
            left = compose(mu_f, Tf(eta_f), sig)
            right = compose(mu_f, eta_Tf, sig)
            if not _same(left, one, sig) and not _same(left, Tf(f), sig):
                report.fail("mu . T(eta) = 1_T", f, repr(left))
            if not _same(right, one, sig) and not _same(right, Tf(f), sig):
                report.fail("mu . eta(T) = 1_T", f, repr(right))
        except MalformedExpr as exc:
            report.fail("monad composite defined", f, str(exc))
    return report


def check_adjunction_laws(F: Mapping[str, CatExpr], G: Mapping[str, CatExpr],
                          eta: Mapping[CatExpr, CatExpr],
                          epsilon: Mapping[CatExpr, CatExpr],
                          sigC: Signature, sigD: Signature,
                          samples: int = 100, seed: int = 0,
                          bound: int = 10**5) -> LawReport:
    report = LawReport()
    rng = random.Random(seed)
    elemsC = _domain(sigC, samples, rng, bound)
    elemsD = _domain(sigD, samples, rng, bound)

    def Ff(e):
        return extend(F, e)

    def Gf(e):
        return extend(G, e)
    _naturality("eta", eta, lambda e: e, lambda e: Gf(Ff(e)), elemsC, sigC, sigC, report)
    _naturality("epsilon", epsilon, lambda e: Ff(Gf(e)), lambda e: e, elemsD, sigD, sigD, report)
    for g in _law_domain(elemsD, sigD, epsilon):
        report.checked += 1
        eps_g = _component(epsilon, g, sigD)
        eta_Gg = _component(eta, Gf(g), sigC)
        if eps_g is None or eta_Gg is None:
            report.fail("(G eps)(eta G) = 1_G", g, "component undefined")
            continue
        try:
            lhs = compose(Gf(eps_g), eta_Gg, sigC)
        except MalformedExpr as exc:
            report.fail("(G eps)(eta G) = 1_G", g, str(exc))
            continue
        if not (_same(lhs, Gf(g), sigC) or _same(lhs, Id(type_nf(target(Gf(g), sigC), sigC)), sigC)):
            report.fail("(G eps)(eta G) = 1_G", g, repr(lhs))
    for f in _law_domain(elemsC, sigC, eta):
        report.checked += 1
        eta_f = _component(eta, f, sigC)
        eps_Ff = _component(epsilon, Ff(f), sigD)
        if eta_f is None or eps_Ff is None:
            report.fail("(eps F)(F eta) = 1_F", f, "component undefined")
            continue
        try:
            lhs = compose(eps_Ff, Ff(eta_f), sigD)
        except MalformedExpr as exc:
            report.fail("(eps F)(F eta) = 1_F", f, str(exc))
            continue
        if not (_same(lhs, Ff(f), sigD) or _same(lhs, Id(type_nf(target(Ff(f), sigD), sigD)), sigD)):
            report.fail("(eps F)(F eta) = 1_F", f, repr(lhs))
    return report
