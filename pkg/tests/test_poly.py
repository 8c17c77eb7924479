import random

import pytest
from hypothesis import given, settings, strategies as st

from gtt import iccc, poly, randgen
from gtt.errors import NotAPath, NotClosedSource, TargetMismatch
from gtt.expr import (Comp, Gen, Id, Indet, Pair, Proj1, Proj2, Top,
                      Turnstile, Wedge, has_indet, ter)
from gtt.nbe import Engine
from gtt.signature import simple_signature

a, b, c = Gen("a"), Gen("b"), Gen("c")
f, g = Gen("f"), Gen("g")
x = Indet("x", a)


@pytest.fixture(scope="module")
def sig():
    return simple_signature("abc", [("f", "a", "b"), ("g", "b", "c")], [("k", "b")])


def test_kappa_of_the_indeterminate(sig):
    assert poly.kappa(x, x, sig) == Proj1(a, Top)


def test_kappa_of_a_base_element(sig):
    assert poly.kappa(x, f, sig) == Comp(f, Proj2(a, a))


def test_kappa_of_a_composite(sig):
    phi = Comp(f, x)
    expect = Comp(poly.kappa(x, f, sig), Pair(Proj1(a, Top), poly.kappa(x, x, sig)))
    assert poly.kappa(x, phi, sig) == expect


def test_kappa_rejects_non_paths(sig):
    with pytest.raises(NotAPath):
        poly.kappa(x, Turnstile(x, a), sig)


def test_epsilon_recovers_the_base_factor(sig):
    assert poly.epsilon_x(x, Comp(f, x), sig) == f


def test_epsilon_of_x_is_identity(sig):
    assert poly.epsilon_x(x, x, sig) == Id(a)


def test_epsilon_of_a_constant(sig):
    assert poly.epsilon_x(x, Gen("k"), sig) == Comp(Gen("k"), ter(a))


def test_epsilon_needs_top_source(sig):
    with pytest.raises(NotClosedSource):
        poly.epsilon_x(x, f, sig)


def test_lambda_of_a_composite_is_a_name(sig):
    assert iccc.equal(poly.lambda_x(x, Comp(f, x), sig), iccc.name(f, sig), sig)


def test_lambda_of_x_names_the_identity(sig):
    assert iccc.equal(poly.lambda_x(x, x, sig), iccc.name(Id(a), sig), sig)


def test_eq_x_laws(sig):
    phi, psi = Comp(f, x), Comp(Comp(g, f), x)
    assert poly.eq_x(Comp(Proj1(b, c), Pair(phi, psi)), phi, sig)
    assert poly.eq_x(Comp(ter(b), phi), Id(Top), sig)
    assert poly.eq_x(Comp(ter(b), f), ter(a), sig)
    assert poly.eq_x(x, x, sig)


def test_substitute(sig):
    k = Gen("k")
    y = Indet("y", b)
    assert poly.substitute(y, k, y, sig) == k
    assert poly.substitute(y, k, f, sig) == f
    assert poly.substitute(y, k, Comp(g, y), sig) == Comp(g, k)


def test_substitute_checks_the_target(sig):
    y = Indet("y", b)
    with pytest.raises(TargetMismatch):
        poly.substitute(y, Comp(g, Gen("k")), y, sig)


def test_extend_functor(sig):
    y = Indet("y", b)
    F = iccc.IcccMorphism.identity(sig)
    th = poly.extend_functor(F, Gen("k"), y)
    assert th(Comp(g, y)) == Comp(g, Gen("k"))
    same = poly.extend_functor(F, y, y)
    assert same(Comp(g, y)) == Comp(g, y)


def test_deduction_theorem_forward_on_x(sig):
    from gtt.dedsys import DeductiveSystem
    fwd, back = poly.deduction_theorem(Top, a, DeductiveSystem(sig), x)
    assert fwd.expr == Proj1(a, Top)
    assert fwd.conclusion == (Wedge(a, Top), a)
    assert back is not None     # pi : a /\ top -> a is a base witness


def test_deduction_theorem_backward_shape(sig):
    from gtt.dedsys import DeductiveSystem
    _, back = poly.deduction_theorem(Top, a, DeductiveSystem(sig), x)
    base = back.derivation.premises[0].expr
    assert back.expr == Comp(base, Pair(Comp(x, ter(Top)), Id(Top)))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_functional_completeness(sig, s):
    rng = random.Random(s)
    eng = Engine(sig)
    X = randgen.random_type(rng, sig, 1)
    xi = Indet("x", X)
    tgt = randgen.random_type(rng, sig, 2)
    phi = randgen.random_element(rng, sig, Top, tgt, 10, indets=(xi,))
    g_ = poly.epsilon_x(xi, phi, sig, eng)
    assert not has_indet(g_)
    assert poly.eq_x(Comp(g_, xi), phi, sig, eng)
    kap = poly.kappa(xi, phi, sig, eng)
    assert poly.eq_x(Comp(kap, Pair(xi, Id(Top))), phi, sig, eng)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_epsilon_is_unique(sig, s):
    rng = random.Random(s)
    eng = Engine(sig)
    X = randgen.random_type(rng, sig, 1)
    xi = Indet("x", X)
    base = randgen.random_element(rng, sig, X, randgen.random_type(rng, sig, 2), 8)
    assert poly.epsilon_x(xi, Comp(base, xi), sig, eng) == eng.normalize(base)
