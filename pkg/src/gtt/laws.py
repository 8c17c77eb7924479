"""Random instances of the equational laws, shared by selftest and tests.

Each ``*_instance`` returns ``(law, lhs, rhs)``; the checkers return the
list of failing instances.
"""
from __future__ import annotations

import random

from . import randgen
from .expr import Comp, Eval, Id, Pair, Proj1, Proj2, Star, Top, Turnstile, Wedge
from .iccc import equal
from .lam import (LambdaCalculus, free_vars, normalize_term, subst, term_equal,
                  ty)
from .nbe import Engine
from .signature import Signature
from .terms import App, Fst, Lam, PairT, Snd, Star as TStar, Var

ICCC_LAWS = ("pair-precompose", "id-wedge", "wedge-compose", "eval-star", "star-precompose")
LAMBDA_LAWS = ("beta", "eta", "projection", "surjective-pairing", "terminal", "subst-assoc")


def iccc_instance(rng, sig: Signature, law: str, size: int = 4):
    ty_ = lambda: randgen.random_type(rng, sig, 1)
    el = lambda s, t: randgen.random_element(rng, sig, s, t, size)
    if law == "pair-precompose":
        a, b, c, d = ty_(), ty_(), ty_(), ty_()
        f, g, h = el(c, a), el(c, b), el(d, c)
        return law, Comp(Pair(f, g), h), Pair(Comp(f, h), Comp(g, h))
    if law == "id-wedge":
        a, b = ty_(), ty_()
        return law, Wedge(Id(a), Id(b)), Id(Wedge(a, b))
    if law == "wedge-compose":
        a, a1, a2, b, b1, b2 = (ty_() for _ in range(6))
        f, g, f1, g1 = el(a1, a), el(b1, b), el(a2, a1), el(b2, b1)
        return law, Comp(Wedge(f, g), Wedge(f1, g1)), Wedge(Comp(f, f1), Comp(g, g1))
    if law == "eval-star":
        a, b = ty_(), ty_()
        return law, Star(Eval(a, b)), Id(Turnstile(a, b))
    if law == "star-precompose":
        a, b, c, d = ty_(), ty_(), ty_(), ty_()
        f, g = el(Wedge(c, a), b), el(d, c)
        rhs = Star(Comp(f, Pair(Comp(g, Proj1(d, a)), Proj2(d, a))))
        return law, Comp(Star(f), g), rhs
    raise ValueError(law)


def check_iccc_laws(sig: Signature, samples: int, seed=0, size: int = 4) -> list:
    rng = random.Random(seed)
    eng = Engine(sig)
    bad = []
    for i in range(samples):
        law, lhs, rhs = iccc_instance(rng, sig, ICCC_LAWS[i % len(ICCC_LAWS)], size)
        if not equal(lhs, rhs, sig, eng):
            bad.append((law, lhs, rhs))
    return bad


def lambda_instance(rng, lam: LambdaCalculus, law: str, size: int = 5):
    sig = lam.sig
    rt = lambda t, free=(): randgen.random_term(rng, sig, t, size, free=free)
    A = randgen.random_type(rng, sig, 1)
    B = randgen.random_type(rng, sig, 2)
    x = Var(A, 1)
    if law == "beta":
        s, t = rt(B, (x,)), rt(A)
        return law, App(Lam(x, s), t), subst(s, x, t)
    if law == "eta":
        f = rt(Turnstile(A, B))
        y = Var(A, 1 + max([v.n for v in free_vars(f) if v.type == A], default=0))
        return law, Lam(y, App(f, y)), f
    if law == "projection":
        s, t = rt(A), rt(B)
        if rng.random() < 0.5:
            return law, Fst(PairT(s, t)), s
        return law, Snd(PairT(s, t)), t
    if law == "surjective-pairing":
        p = rt(Wedge(A, B))
        return law, PairT(Fst(p), Snd(p)), p
    if law == "terminal":
        return law, rt(Top, (x,)), TStar()
    if law == "subst-assoc":
        # s[x/t][y/r] = s[x/t[y/r]] with y not free in s
        C = randgen.random_type(rng, sig, 1)
        y = Var(C, 2)
        s = rt(B, (x,))
        t = rt(A, (y,))
        r = rt(C)
        return law, subst(subst(s, x, t), y, r), subst(s, x, subst(t, y, r))
    raise ValueError(law)


def check_lambda_laws(lam: LambdaCalculus, samples: int, seed=0, size: int = 5,
                      laws=LAMBDA_LAWS) -> list:
    """Failing instances, including subject-reduction failures."""
    rng = random.Random(seed)
    bad = []
    for i in range(samples):
        law, lhs, rhs = lambda_instance(rng, lam, laws[i % len(laws)], size)
        if not term_equal(lhs, rhs, lam):
            bad.append((law, lhs, rhs))
        for s in (lhs, rhs):
            if ty(normalize_term(s, lam), lam) != ty(s, lam):
                bad.append(("subject-reduction", s, None))
    return bad


# ---------------------------------------------------------------------------
# deduction theorem and functional completeness

def check_deduction(sig: Signature, goals: int, seed=0, depth: int = 12,
                    max_tries: int = 100_000):
    """Round trip the deduction theorem on ``goals`` random goals a |- b that
    are inhabited in A[x].  Returns (failures, goals checked)."""
    from .dedsys import DeductiveSystem, valid_element
    from .expr import Indet, has_indet
    from .poly import deduction_theorem
    rng = random.Random(seed)
    ds = DeductiveSystem(sig)
    eng = ds.engine
    bad, done = [], 0
    for _ in range(max_tries):
        if done >= goals:
            break
        x = Indet("x", eng.tnf(randgen.random_type(rng, sig, 1)))
        a = eng.tnf(randgen.random_type(rng, sig, 2))
        b = eng.tnf(randgen.random_type(rng, sig, 2))
        fwd, back = deduction_theorem(a, b, ds, x, depth)
        if fwd is None:
            continue
        done += 1
        k = fwd.expr
        if eng.boundaries(k) != (Wedge(x.target, a), b):
            bad.append(("forward boundaries", x, a, b, k))
        if has_indet(k, x):
            bad.append(("forward mentions x", x, a, b, k))
        if not valid_element(k, ds, depth):
            bad.append(("forward not valid", x, a, b, k))
        if back is None or not valid_element(back.expr, ds.with_indet(x), depth):
            bad.append(("backward", x, a, b, back))
    return bad, done


def check_functional_completeness(sig: Signature, samples: int, seed=0, size: int = 12):
    """Existence, uniqueness and the kappa law; returns the failures."""
    from .expr import Indet, has_indet
    from .poly import epsilon_x, eq_x, kappa
    rng = random.Random(seed)
    eng = Engine(sig)
    bad = []
    for _ in range(samples):
        x = Indet("x", eng.tnf(randgen.random_type(rng, sig, 1)))
        tgt = eng.tnf(randgen.random_type(rng, sig, 2))
        phi = randgen.random_element(rng, sig, Top, tgt, size, indets=(x,))
        g = epsilon_x(x, phi, sig, eng)
        if has_indet(g, x) or not eq_x(Comp(g, x), phi, sig, eng):
            bad.append(("existence", x, phi, g))
        k = kappa(x, phi, sig, eng)
        if not eq_x(Comp(k, Pair(x, Id(Top))), phi, sig, eng):
            bad.append(("kappa law", x, phi, k))
        base = randgen.random_element(rng, sig, x.target, tgt, size)
        if epsilon_x(x, Comp(base, x), sig, eng) != eng.normalize(base):
            bad.append(("uniqueness", x, base))
    return bad


# ---------------------------------------------------------------------------
# equality deciders

def check_decider_agreement(lam: LambdaCalculus, samples: int, seed=0, size: int = 8):
    """equal(e1, e2) against term_equal of their L-translations, on pairs
    that share boundaries: half unrelated, half rewritten copies."""
    from .correspond import cat_to_term
    from .iccc import Rewriter
    rng = random.Random(seed)
    sig = lam.sig
    eng = lam.engine
    rw = Rewriter(sig)
    bad = []
    for i in range(samples):
        e1, s, t = randgen.random_arrow(rng, sig, size)
        if i % 2:
            e2 = randgen.random_element(rng, sig, s, t, size)
        else:
            e2 = rw.rewrite(e1, limit=rng.randint(1, 6))
        x = Var(eng.tnf(s), 1)
        lhs = equal(e1, e2, sig, eng)
        rhs = term_equal(cat_to_term(e1, x, lam), cat_to_term(e2, x, lam), lam)
        if lhs != rhs:
            bad.append((e1, e2, lhs, rhs))
    return bad


def closure_agreement(sig: Signature, max_size: int, slack: int = 0) -> dict:
    """Compare equal with the rewriting-closure oracle on every pair of
    well-formed elements of size <= max_size sharing boundaries.

    ``unsound`` counts pairs the oracle joins but equal separates;
    ``unconnected`` counts pairs equal identifies that the bounded closure
    cannot join.  Agreement means both are zero.
    """
    from collections import defaultdict
    from .iccc import rewrite_closure_classes
    eng = Engine(sig)
    elems = [e for es in randgen.enumerate_elements(sig, max_size, eng).values() for e in es]
    classes = rewrite_closure_classes(elems, sig, slack)
    groups = defaultdict(list)
    for e in elems:
        groups[eng.boundaries(e)].append(e)

    def same(counts):
        return sum(k * (k - 1) // 2 for k in counts.values())
    pairs = eq_pairs = unsound = unconnected = 0
    for es in groups.values():
        both, by_nf, by_cls = defaultdict(int), defaultdict(int), defaultdict(int)
        for e in es:
            nf = eng.normalize(e)
            both[nf, classes[e]] += 1
            by_nf[nf] += 1
            by_cls[classes[e]] += 1
        pairs += len(es) * (len(es) - 1) // 2
        eq_pairs += same(by_nf)
        unsound += same(by_cls) - same(both)
        unconnected += same(by_nf) - same(both)
    return {"elements": len(elems), "pairs": pairs, "equal_pairs": eq_pairs,
            "unsound": unsound, "unconnected": unconnected,
            "max_size": max_size, "slack": slack}
