import random

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from gtt import jsonio, randgen
from gtt.expr import Comp, Gen, Indet, Pair, Proj1, Top
from gtt.terms import App, Hole, Lam, Name, Var


def test_expr_document():
    e = Comp(Proj1(Gen("b"), Gen("c")), Pair(Gen("f"), Gen("g")))
    doc = jsonio.encode(e)
    jsonio.validate(doc)
    assert doc["version"] == jsonio.SCHEMA_VERSION
    assert doc["expr"]["op"] == "comp"
    assert jsonio.expr_from_json(doc["expr"]) == e


def test_indet_and_top():
    x = Indet("x1", Gen("a"))
    assert jsonio.expr_from_json(jsonio.expr_to_json(x)) == x
    assert jsonio.expr_from_json(jsonio.expr_to_json(Top)) is Top


def test_term_document():
    v = Var(Gen("a"), 1)
    s = Lam(v, App(Name(Gen("f")), v))
    doc = jsonio.encode(s)
    jsonio.validate(doc)
    assert jsonio.term_from_json(doc["term"]) == s
    assert jsonio.term_from_json(jsonio.term_to_json(Hole(Gen("b")))) == Hole(Gen("b"))


def test_schema_rejects_unknown_ops_and_versions():
    with pytest.raises(jsonschema.ValidationError):
        jsonio.validate(jsonio.document("expr", expr={"op": "nope"}))
    doc = jsonio.encode(Gen("a"))
    doc["version"] = jsonio.SCHEMA_VERSION + 1
    with pytest.raises(jsonschema.ValidationError):
        jsonio.validate(doc)


def test_variable_indices_are_positive():
    doc = jsonio.document("term", term={"op": "var", "type": {"op": "top"}, "n": 0})
    with pytest.raises(jsonschema.ValidationError):
        jsonio.validate(doc)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_random_items_round_trip(sig2, s):
    rng = random.Random(s)
    e, src, _ = randgen.random_arrow(rng, sig2, 8)
    jsonio.validate(jsonio.encode(e))
    assert jsonio.expr_from_json(jsonio.expr_to_json(e)) == e
    t = randgen.random_term(rng, sig2, randgen.random_type(rng, sig2, 2), 8)
    jsonio.validate(jsonio.encode(t))
    assert jsonio.term_from_json(jsonio.term_to_json(t)) == t
