import random

import pytest
from hypothesis import given, settings, strategies as st

from gtt import gencat, randgen
from gtt.errors import MalformedExpr, NotComposable
from gtt.expr import Comp, Gen, Id, Turnstile
from gtt.signature import Signature, simple_signature

a, b, c = Gen("a"), Gen("b"), Gen("c")
f, g, h = Gen("f"), Gen("g"), Gen("h")


def test_source_and_target_of_composite(sig_fgh):
    assert gencat.source(Comp(g, f), sig_fgh) == a
    assert gencat.target(Comp(g, f), sig_fgh) == c


def test_identity_boundaries(sig_fgh):
    assert gencat.boundaries(Id(a), sig_fgh) == (a, a)


def test_generator_boundaries_read_back(sig_fgh):
    assert gencat.source(f, sig_fgh) == a
    assert gencat.target(f, sig_fgh) == b


def test_turnstile_target_is_left_side(sig_fgh):
    assert gencat.target(Turnstile(f, g), sig_fgh) == f


def test_composition_checks_boundaries(sig_fgh):
    with pytest.raises(NotComposable):
        gencat.boundaries(Comp(f, g), sig_fgh)
    assert not gencat.well_formed(Comp(f, g), sig_fgh)


def test_undeclared_generator_is_malformed(sig_fgh):
    with pytest.raises(MalformedExpr):
        gencat.boundaries(Gen("nope"), sig_fgh)


def test_identity_laws(sig_fgh):
    assert gencat.compose(f, Id(a), sig_fgh) == f
    assert gencat.compose(Id(b), f, sig_fgh) == f


def test_associativity_normal_form(sig3):
    h3 = Gen("h")
    left = gencat.compose(h3, gencat.compose(g, f, sig3), sig3)
    right = gencat.compose(gencat.compose(h3, g, sig3), f, sig3)
    assert left == right


def _chain(rng, sig, n):
    gens = [Gen(x) for x in ("f", "g", "h")]
    cur = rng.choice(gens)
    out = [cur]
    for _ in range(n - 1):
        nxt = [x for x in gens if gencat.source(x, sig) == gencat.target(out[-1], sig)]
        out.append(rng.choice(nxt))
    return out[::-1]          # leftmost factor first


def _bracketings(fs):
    if len(fs) == 1:
        yield fs[0]
        return
    for i in range(1, len(fs)):
        for l in _bracketings(fs[:i]):
            for r in _bracketings(fs[i:]):
                yield Comp(l, r)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_all_bracketings_agree(sig3, n_seed, n):
    fs = _chain(random.Random(n_seed), sig3, n)
    forms = {gencat.gnf(e, sig3) for e in _bracketings(fs)}
    assert len(forms) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_identities_are_neutral(sig2, s):
    rng = random.Random(s)
    e, _, _ = randgen.random_arrow(rng, sig2, 6)
    src, tgt = gencat.boundaries(e, sig2)
    if gencat.is_object(src, sig2) and gencat.is_object(tgt, sig2):
        assert gencat.gnf(Comp(e, Id(src)), sig2) == gencat.gnf(e, sig2)
        assert gencat.gnf(Comp(Id(tgt), e), sig2) == gencat.gnf(e, sig2)


def test_order_basics():
    sig = simple_signature("ab")
    sig.add_order(a, b)
    assert gencat.leq(a, a, sig)
    assert gencat.leq(a, b, sig)
    assert not gencat.leq(b, a, sig)
    assert gencat.leq(Id(a), Id(b), sig)


def test_order_is_transitive():
    sig = simple_signature("abc")
    sig.add_order(a, b)
    sig.add_order(b, c)
    assert gencat.leq(a, c, sig)
    assert not gencat.leq(c, a, sig)


def test_order_must_be_antisymmetric():
    sig = simple_signature("ab")
    sig.add_order(a, b)
    sig.add_order(b, a)
    with pytest.raises(MalformedExpr):
        gencat.leq(a, b, sig)


def test_composite_defined_when_source_below_target():
    # g . f is defined iff source(g) <= target(f)
    sig = Signature()
    for o in ("a", "b", "bb", "c"):
        sig.obj(o)
    sig.gen("f", a, b)
    sig.gen("g", Gen("bb"), c)
    assert not gencat.well_formed(Comp(g, f), sig)
    sig.add_order(Gen("bb"), b)
    assert gencat.boundaries(Comp(g, f), sig) == (a, c)


# -- functors ---------------------------------------------------------------

def test_identity_functor_has_no_violations(sig3):
    F = {n: Gen(n) for n in sig3.generators}
    rep = gencat.check_functor(F, sig3, sig3, samples=50)
    assert rep.ok and rep.checked > 0


def test_collapsing_functor_is_fine():
    src = simple_signature("ab", [("f", "a", "b")])
    dst = simple_signature("c")
    F = {"a": c, "b": c, "f": Id(c)}
    assert gencat.check_functor(F, src, dst).ok


def test_inconsistent_boundaries_are_reported():
    src = simple_signature("ab", [("f", "a", "b")])
    dst = simple_signature("cd", [("u", "d", "c")])
    F = {"a": c, "b": Gen("d"), "f": Gen("u")}
    rep = gencat.check_functor(F, src, dst)
    laws = {v.law for v in rep.violations}
    assert "F(source f) = source F(f)" in laws
    assert all(v.witness == f for v in rep.violations)


def test_partial_mapping_is_reported(sig2):
    rep = gencat.check_functor({"a": a}, sig2, sig2)
    assert not rep.ok and rep.violations[0].law == "total"


# -- monads and adjunctions -------------------------------------------------

def test_identity_monad():
    sig = simple_signature("ab", [("f", "a", "b")])
    T = {n: Gen(n) for n in sig.generators}
    one = {a: Id(a), b: Id(b)}
    assert gencat.check_monad_laws(T, one, one, sig).ok


def _pointed():
    """T collapses a onto b; e : b -> b, u : a -> b."""
    sig = Signature()
    sig.obj("a")
    sig.obj("b")
    sig.gen("e", b, b)
    sig.gen("u", a, b)
    T = {"a": b, "b": b, "e": Gen("e"), "u": b}
    return sig, T


def test_mu_breaking_associativity_is_reported():
    sig, T = _pointed()
    eta = {a: Gen("u"), b: Id(b)}
    mu = {a: Id(b), b: Gen("e")}
    rep = gencat.check_monad_laws(T, eta, mu, sig)
    bad = [v for v in rep.violations if v.law == "mu . T(mu) = mu . mu(T)"]
    assert [v.witness for v in bad] == [a]


def test_unnatural_eta_is_reported():
    sig, T = _pointed()
    # at u : a -> b the square reads e . u against T(u) . u = u
    eta = {a: Gen("u"), b: Gen("e")}
    mu = {a: Id(b), b: Id(b)}
    rep = gencat.check_monad_laws(T, eta, mu, sig)
    assert any(v.law == "eta naturality" and v.witness == Gen("u") for v in rep.violations)


def test_identity_adjunction():
    sig = simple_signature("ab", [("f", "a", "b")])
    I = {n: Gen(n) for n in sig.generators}
    one = {a: Id(a), b: Id(b)}
    assert gencat.check_adjunction_laws(I, I, one, one, sig, sig).ok


def test_perturbed_counit_breaks_a_triangle():
    sig = Signature()
    sig.obj("a")
    sig.gen("e", a, a)
    I = {"a": a, "e": Gen("e")}
    one = {a: Id(a)}
    bad_eps = {a: Gen("e")}
    rep = gencat.check_adjunction_laws(I, I, one, bad_eps, sig, sig)
    assert any(v.law == "(G eps)(eta G) = 1_G" and v.witness == a for v in rep.violations)
