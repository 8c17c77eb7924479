"""Seeded, type-directed random generators for types, elements and terms.

Everything here is well-formed by construction.  Sizes are soft budgets.
"""
from __future__ import annotations

import random

from .expr import (CatExpr, Comp, Eval, Gen, Id, Pair, Proj1, Proj2, Star,
                   Top, Turnstile, Wedge, ter)
from .signature import Signature
from . import terms as T


def rng_for(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def base_objects(sig: Signature) -> list[CatExpr]:
    return [Gen(o) for o in sig.objects]


def random_type(rng, sig: Signature, depth: int = 2) -> CatExpr:
    objs = base_objects(sig)
    r = rng.random()
    if depth <= 0 or r < 0.5:
        return rng.choice(objs) if rng.random() < 0.9 else Top
    if r < 0.75:
        return Wedge(random_type(rng, sig, depth - 1), random_type(rng, sig, depth - 1))
    return Turnstile(random_type(rng, sig, depth - 1), random_type(rng, sig, depth - 1))


def _arrows_into(sig: Signature, tgt: CatExpr):
    out = []
    for n, (s, t) in sig.generators.items():
        if not sig.is_object(n) and t == tgt:
            out.append((Gen(n), s))
    return out


def random_element(rng, sig: Signature, src: CatExpr, tgt: CatExpr, size: int = 6,
                   holes: bool = True, indets=()) -> CatExpr:
    """An element src -> tgt (types in type normal form).  Indeterminates
    in ``indets`` may occur, always as ``x . ter``."""
    size = max(size, 1)
    ind = [x for x in indets if x.target == tgt]
    if ind and rng.random() < 0.35:
        x = rng.choice(ind)
        return x if src is Top else Comp(x, ter(src))
    if tgt is Top:
        return ter(src)
    if size <= 1:
        # out of budget: only structural rules, so the recursion ends
        if src == tgt:
            return Id(src)
        if isinstance(tgt, Wedge):
            return Pair(random_element(rng, sig, src, tgt.left, 1, holes, indets),
                        random_element(rng, sig, src, tgt.right, 1, holes, indets))
        if isinstance(tgt, Turnstile):
            return Star(random_element(rng, sig, Wedge(src, tgt.left), tgt.right, 1, holes, indets))
        direct = [g for g, s in _arrows_into(sig, tgt) if s == src]
        if direct:
            return rng.choice(direct)
        return Turnstile(tgt, src)
    choices = []
    if src == tgt:
        choices.append(("id", 3 if size <= 2 else 1))
    if isinstance(tgt, Wedge):
        choices.append(("pair", 4))
        if isinstance(src, Wedge):
            choices.append(("wedge", 2))
    if isinstance(tgt, Turnstile):
        choices.append(("star", 4))
    gens = _arrows_into(sig, tgt)
    if gens:
        choices.append(("gen", 4))
    if isinstance(src, Wedge) and size > 1:
        choices.append(("proj", 3))
    if size > 3:
        choices.append(("eval", 1))
        choices.append(("assoc", 1))
    if holes and not (src == tgt):
        choices.append(("hole", 1))
    if not choices:
        # no direct route: go through a projection-free generic
        return Turnstile(tgt, src) if src != tgt else Id(src)
    kind = rng.choices([c for c, _ in choices], [w for _, w in choices])[0]
    half = max(1, (size - 1) // 2)
    if kind == "id":
        return Id(src)
    if kind == "pair":
        return Pair(random_element(rng, sig, src, tgt.left, half, holes, indets),
                    random_element(rng, sig, src, tgt.right, half, holes, indets))
    if kind == "wedge":
        return Wedge(random_element(rng, sig, src.left, tgt.left, half, holes, indets),
                     random_element(rng, sig, src.right, tgt.right, half, holes, indets))
    if kind == "star":
        return Star(random_element(rng, sig, Wedge(src, tgt.left), tgt.right, size - 1, holes, indets))
    if kind == "gen":
        g, s = rng.choice(gens)
        if s == src and rng.random() < 0.5:
            return g
        return Comp(g, random_element(rng, sig, src, s, size - 1, holes, indets))
    if kind == "proj":
        if rng.random() < 0.5:
            return Comp(random_element(rng, sig, src.left, tgt, size - 1, holes, indets),
                        Proj1(src.left, src.right))
        return Comp(random_element(rng, sig, src.right, tgt, size - 1, holes, indets),
                    Proj2(src.left, src.right))
    if kind == "eval":
        a = random_type(rng, sig, 1)
        return Comp(Eval(a, tgt),
                    Pair(random_element(rng, sig, src, Turnstile(a, tgt), half, holes, indets),
                         random_element(rng, sig, src, a, half, holes, indets)))
    if kind == "assoc":
        mid = random_type(rng, sig, 1)
        return Comp(random_element(rng, sig, mid, tgt, half, holes, indets),
                    random_element(rng, sig, src, mid, half, holes, indets))
    return Turnstile(tgt, src)


def random_arrow(rng, sig: Signature, size: int = 6, holes: bool = True, indets=()):
    src = random_type(rng, sig, 1)
    tgt = random_type(rng, sig, 1)
    return random_element(rng, sig, src, tgt, size, holes, indets), src, tgt


# ---------------------------------------------------------------------------
# lambda terms

def random_term(rng, sig: Signature, ty: CatExpr, size: int = 6, env=(),
                free: tuple = (), names: bool = True) -> T.Term:
    """A term of type ``ty``.  ``env`` holds bound variables in scope and
    ``free`` the free variables that may be used."""
    size = max(size, 1)
    scope = list(env) + list(free)
    usable = [v for v in scope if v.type == ty]
    if ty is Top and rng.random() < 0.7:
        return T.Star()
    choices = []
    if usable:
        choices.append(("var", 4 if size <= 2 else 2))
    if isinstance(ty, Wedge):
        choices.append(("pair", 3))
    if isinstance(ty, Turnstile):
        choices.append(("lam", 4))
        if names and rng.random() < 0.3:
            choices.append(("name", 1))
    consts = [n for n in sig.constants if sig.generators[n][1] == ty]
    if consts:
        choices.append(("const", 2))
    gens = _arrows_into(sig, ty) if names else []
    if gens and size > 1:
        choices.append(("genapp", 3))
    if size > 2:
        choices.append(("proj", 1))
        choices.append(("app", 1))
    if ty is Top:
        choices.append(("star", 1))
    if not choices:
        if size <= 1:
            return T.Hole(ty)
        choices.append(("beta", 1))
    kind = rng.choices([c for c, _ in choices], [w for _, w in choices])[0]
    half = max(1, (size - 1) // 2)
    if kind == "var":
        return rng.choice(usable)
    if kind == "star":
        return T.Star()
    if kind == "pair":
        return T.PairT(random_term(rng, sig, ty.left, half, env, free, names),
                       random_term(rng, sig, ty.right, half, env, free, names))
    if kind == "lam":
        depth = 1 + sum(1 for v in env if v.type == ty.left)
        v = T.Var(ty.left, depth + 50)
        body = random_term(rng, sig, ty.right, size - 1, tuple(env) + (v,), free, names)
        return T.Lam(v, body)
    if kind == "name":
        f = random_element(rng, sig, ty.left, ty.right, max(1, size - 1))
        return T.Name(f)
    if kind == "const":
        return T.Const(rng.choice(consts))
    if kind == "genapp":
        g, s = rng.choice(gens)
        return T.App(T.Name(g), random_term(rng, sig, s, size - 1, env, free, names))
    if kind == "proj":
        other = random_type(rng, sig, 1)
        if rng.random() < 0.5:
            return T.Fst(random_term(rng, sig, Wedge(ty, other), size - 1, env, free, names))
        return T.Snd(random_term(rng, sig, Wedge(other, ty), size - 1, env, free, names))
    # app / beta
    a = random_type(rng, sig, 1)
    return T.App(random_term(rng, sig, Turnstile(a, ty), half, env, free, names),
                 random_term(rng, sig, a, half, env, free, names))


_UNARY = (Id, Star)
_BINARY = (Comp, Turnstile, Wedge, Pair, Proj1, Proj2, Eval)


def enumerate_elements(sig: Signature, max_size: int, engine=None) -> dict:
    """Every well-formed element of size <= max_size, keyed by size.

    Bottom-up and exhaustive; the count grows fast, so keep max_size small.
    """
    from .errors import GttError
    from .nbe import Engine
    eng = engine or Engine(sig)

    def ok(e):
        try:
            eng.boundaries(e)
            return True
        except GttError:
            return False
    by_size = {1: [Top] + [Gen(n) for n in sig.generators]}
    for n in range(2, max_size + 1):
        out = []
        for op in _UNARY:
            out.extend(e for e in map(op, by_size.get(n - 1, ())) if ok(e))
        for k in range(1, n - 1):
            lefts, rights = by_size.get(k, ()), by_size.get(n - 1 - k, ())
            for op in _BINARY:
                out.extend(e for e in (op(l, r) for l in lefts for r in rights) if ok(e))
        by_size[n] = out
    return by_size
