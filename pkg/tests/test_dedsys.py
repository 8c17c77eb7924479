import pytest

from gtt.dedsys import (DeductiveSystem, inhabit, is_valid, named_constants,
                        replays, valid_element)
from gtt.errors import DepthExceeded
from gtt.expr import (Comp, Eval, Gen, Id, Pair, Proj1, Proj2, Top, Turnstile,
                      Wedge, ter)
from gtt.nbe import Engine
from gtt.signature import simple_signature

a, b, c = Gen("a"), Gen("b"), Gen("c")
imp = Turnstile


@pytest.fixture(scope="module")
def ds():
    return DeductiveSystem(simple_signature("abc"))


def test_top_is_valid(ds):
    assert is_valid(Top, ds)


def test_projection_type_is_valid(ds):
    assert is_valid(Turnstile(Wedge(a, b), a), ds)


def test_unrelated_subjects_are_not_valid(ds):
    assert not is_valid(Turnstile(b, a), ds)
    assert inhabit(a, b, ds) is None


def test_duplication(ds):
    w = inhabit(a, Wedge(a, a), ds)
    assert w.expr == Pair(Id(a), Id(a))


def test_unit_pairing(ds):
    w = inhabit(a, Wedge(a, Top), ds)
    assert w.expr == Pair(Id(a), ter(a))


HEYTING = [
    ("dup", a, Wedge(a, a)),
    ("unit", a, Wedge(a, Top)),
    ("curry", imp(Wedge(a, b), c), imp(a, imp(b, c))),
    ("split", imp(a, Wedge(b, c)), Wedge(imp(a, b), imp(a, c))),
    ("join", Wedge(imp(a, b), imp(a, c)), imp(a, Wedge(b, c))),
]


@pytest.mark.parametrize("label,p,q", HEYTING, ids=[h[0] for h in HEYTING])
def test_heyting_types_are_inhabited(ds, label, p, q):
    w = inhabit(p, q, ds, depth=12)
    assert w is not None
    assert replays(w, ds)
    assert Engine(ds.sig).boundaries(w.expr) == (p, q)


def test_uncurry_is_inhabited_too(ds):
    assert inhabit(imp(a, imp(b, c)), imp(Wedge(a, b), c), ds) is not None


def test_named_constants(ds):
    t, p, q, ev = named_constants(ds, a, b)
    eng = Engine(ds.sig)
    assert eng.boundaries(p) == (Wedge(a, b), a)
    assert eng.boundaries(q) == (Wedge(a, b), b)
    assert eng.boundaries(ev) == (Wedge(imp(a, b), a), b)
    assert eng.boundaries(named_constants(ds, Top, Top)[0]) == (Top, Top)


def test_seeds_drive_the_search():
    sig = simple_signature("abc", [("f", "a", "b"), ("g", "b", "c")])
    sig.add_valid(Gen("f"))
    ds = DeductiveSystem(sig)
    assert inhabit(a, b, ds).expr == Gen("f")
    assert inhabit(a, c, ds) is None          # g is not valid
    sig.add_valid(Gen("g"))
    assert inhabit(a, c, DeductiveSystem(sig)).expr == Comp(Gen("g"), Gen("f"))


def test_validity_of_elements():
    sig = simple_signature("ab", [("f", "a", "b"), ("h", "a", "b")])
    sig.add_valid(Gen("f"))
    ds = DeductiveSystem(sig)
    assert valid_element(Pair(Gen("f"), Id(a)), ds)
    assert not valid_element(Pair(Gen("h"), Id(a)), ds)
    assert valid_element(Comp(Proj2(a, b), Pair(Id(a), Gen("f"))), ds)
    assert is_valid(Comp(Proj2(a, b), Pair(Id(a), Gen("f"))), ds)
    assert not is_valid(Comp(Eval(a, b), Pair(Proj1(a, a), Proj2(a, a))), ds)


def test_depth_cut_is_reported(ds):
    with pytest.raises(DepthExceeded):
        inhabit(imp(Wedge(a, b), c), imp(a, imp(b, c)), ds, depth=2)
