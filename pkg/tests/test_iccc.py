import random

import pytest
from hypothesis import given, settings, strategies as st

from gtt import iccc, randgen
from gtt.expr import (Comp, Eval, Gen, Id, Pair, Proj1, Proj2, Star, Top,
                      Turnstile, Wedge, ter)
from gtt.nbe import Engine
from gtt.signature import simple_signature

a, b, c = Gen("a"), Gen("b"), Gen("c")
f, g, h = Gen("f"), Gen("g"), Gen("h")


@pytest.fixture(scope="module")
def sig():
    # f : a -> b, g : a -> c, h : c -> a, k : b constant
    return simple_signature("abc", [("f", "a", "b"), ("g", "a", "c"), ("h", "c", "a"),
                                    ("f2", "a", "b")], [("k", "b")])


def nf(e, sig):
    return iccc.normal_form(e, sig)


def test_composite_with_generic_arrow(sig):
    assert nf(Comp(f, Turnstile(a, c)), sig) == Turnstile(b, c)


def test_composite_with_identity_turnstile(sig):
    assert nf(Comp(f, Turnstile(a, a)), sig) == f


def test_eval_star_is_identity(sig):
    assert nf(Star(Eval(a, b)), sig) == Id(Turnstile(a, b))


def test_pair_precomposition(sig):
    lhs = Comp(Pair(f, g), h)
    rhs = Pair(Comp(f, h), Comp(g, h))
    assert iccc.equal(lhs, rhs, sig)


def test_wedge_of_identities(sig):
    assert iccc.equal(Wedge(Id(a), Id(b)), Id(Wedge(a, b)), sig)


def test_distinct_generators_differ(sig):
    assert not iccc.equal(f, Gen("f2"), sig)


def test_equal_needs_equal_boundaries(sig):
    assert not iccc.equal(f, g, sig)


def test_good_pair_projections(sig):
    p, q = iccc.good_pair(b, c, sig)
    assert (p, q) == (Proj1(b, c), Proj2(b, c))
    assert nf(Comp(p, Pair(f, g)), sig) == f
    assert nf(Comp(q, Pair(f, g)), sig) == g


def test_surjective_pairing(sig):
    fg = Pair(f, g)
    assert nf(Pair(Comp(Proj1(b, c), fg), Comp(Proj2(b, c), fg)), sig) == nf(fg, sig)


def test_good_pair_on_top(sig):
    p, _ = iccc.good_pair(Top, Top, sig)
    assert Engine(sig).boundaries(p) == (Wedge(Top, Top), Top)


def test_good_evaluation_laws(sig):
    # u : c /\ a -> b
    u = Comp(f, Proj2(c, a))
    ev = Eval(a, b)
    assert iccc.equal(Comp(ev, Pair(Comp(Star(u), Proj1(c, a)), Proj2(c, a))), u, sig)
    w = Star(Comp(f, Proj2(c, a)))           # c -> (a |- b)
    back = Star(Comp(ev, Pair(Comp(w, Proj1(c, a)), Proj2(c, a))))
    assert iccc.equal(back, w, sig)


def test_name_has_top_source(sig):
    nm = iccc.name(Id(a), sig)
    assert Engine(sig).boundaries(nm) == (Top, Turnstile(a, a))


def test_name_evaluates_back(sig):
    # eps . <name(f) . ter_a, 1_a> = f
    e = Comp(Eval(a, b), Pair(Comp(iccc.name(f, sig), ter(a)), Id(a)))
    assert iccc.equal(e, f, sig)


def test_terminal_collapse(sig):
    assert nf(Comp(ter(b), f), sig) == ter(a)


def test_constants_are_not_collapsed(sig):
    k = Gen("k")
    assert nf(Comp(k, ter(a)), sig) == Comp(k, ter(a))


# -- morphisms ------------------------------------------------------------------

def test_identity_morphism(sig):
    F = iccc.IcccMorphism.identity(sig)
    e = Comp(Proj1(b, c), Pair(f, g))
    assert iccc.equal(F(e), e, sig)
    assert F(f) == f
    assert F.check() == []


def test_morphism_preserves_projections_and_star():
    src = simple_signature("ab", [("f", "a", "b")])
    dst = simple_signature("cd", [("u", "c", "d")])
    F = iccc.IcccMorphism(src, dst, {"a": c, "b": Gen("d"), "f": Gen("u")})
    assert F(Proj1(a, b)) == Proj1(c, Gen("d"))
    body = Comp(f, Proj2(a, a))
    assert iccc.equal(iccc.apply_morphism(F, Star(body)), Star(F(body)), dst)


# -- the rewriter is a sound (if incomplete) oracle ------------------------------

@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_rewriting_is_sound(sig, s):
    rng = random.Random(s)
    e, _, _ = randgen.random_arrow(rng, sig, 8)
    r = iccc.rewrite(e, sig)
    assert Engine(sig).boundaries(r) == Engine(sig).boundaries(e)
    assert iccc.equal(r, e, sig)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_normal_form_is_idempotent(sig, s):
    rng = random.Random(s)
    e, _, _ = randgen.random_arrow(rng, sig, 10)
    n1 = nf(e, sig)
    assert nf(n1, sig) == n1
    assert Engine(sig).boundaries(n1) == Engine(sig).boundaries(e)


def test_closure_classes_merge_rewrite_related(sig):
    e1 = Comp(Proj1(b, c), Pair(f, g))
    classes = iccc.rewrite_closure_classes([e1, f, g], sig)
    assert classes[e1] == classes[f] != classes[g]


def test_enumeration_of_the_smallest_elements(sig2):
    from gtt.randgen import enumerate_elements
    by_size = enumerate_elements(sig2, 2)
    # top, the two objects and the two arrows; then their identities
    assert set(by_size[1]) == {Top, Gen("a"), Gen("b"), Gen("f"), Gen("g")}
    assert set(by_size[2]) == {Id(e) for e in by_size[1]}


def test_weight_counts_annotations_once():
    from gtt.iccc import weight
    a_, b_ = Gen("a"), Gen("b")
    assert weight(Proj1(Wedge(a_, b_), b_)) == 1
    assert weight(Comp(Gen("f"), Proj1(a_, b_))) == 3


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_expansions_are_sound(sig2, s):
    from gtt.iccc import Rewriter
    rng = random.Random(s)
    rw = Rewriter(sig2)
    e, _, _ = randgen.random_arrow(rng, sig2, 6)
    for nxt in rw.expansions(e):
        assert iccc.equal(e, nxt, sig2)


def test_rebracketing_joins_composites(sig2):
    from gtt.iccc import rewrite_closure_classes
    f_, g_ = Gen("f"), Gen("g")
    left, right = Comp(Comp(f_, g_), f_), Comp(f_, Comp(g_, f_))
    cls = rewrite_closure_classes([left, right], sig2, slack=1)
    assert cls[left] == cls[right]


def test_closure_oracle_is_sound_on_small_elements(sig2):
    from gtt.laws import closure_agreement
    rep = closure_agreement(sig2, 4, slack=2)
    assert rep["unsound"] == 0
