"""JSON encoding of elements, terms and CLI results, with a versioned schema."""
from __future__ import annotations

import jsonschema

from .errors import GttError
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge)
from . import terms as T

SCHEMA_VERSION = 1

_BIN = {Comp: "comp", Turnstile: "turnstile", Wedge: "wedge", Pair: "pair",
        Proj1: "pi", Proj2: "pi'", Eval: "eps"}
_BIN_INV = {v: k for k, v in _BIN.items()}


def _obj(op: str, **props) -> dict:
    req = ["op"] + sorted(props)
    return {"if": {"properties": {"op": {"const": op}}},
            "then": {"required": req, "additionalProperties": False,
                     "properties": {"op": True, **props}}}


def _tagged(*cases) -> dict:
    # if/then on the tag keeps validation linear; oneOf would re-check
    # every branch's children at each level
    ops = [c["if"]["properties"]["op"]["const"] for c in cases]
    return {"type": "object", "required": ["op"],
            "properties": {"op": {"enum": ops}}, "allOf": list(cases)}


_EXPR = {"$ref": "#/$defs/expr"}
_TERM = {"$ref": "#/$defs/term"}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gtt document",
    "type": "object",
    "required": ["schema", "version", "kind"],
    "properties": {
        "schema": {"const": "gtt"},
        "version": {"const": SCHEMA_VERSION},
        "kind": {"enum": ["expr", "term", "result", "file"]},
        "expr": _EXPR,
        "term": _TERM,
        "command": {"type": "string"},
        "ok": {"type": "boolean"},
        "result": {},
        "declarations": {"type": "array"},
    },
    "$defs": {
        "expr": _tagged(
            _obj("gen", name={"type": "string"}),
            _obj("indet", name={"type": "string"}, type=_EXPR),
            _obj("top"),
            _obj("id", arg=_EXPR),
            _obj("star", arg=_EXPR),
            *[_obj(op, left=_EXPR, right=_EXPR) for op in _BIN.values()],
        ),
        "term": _tagged(
            _obj("var", type=_EXPR, n={"type": "integer", "minimum": 1}),
            _obj("star"),
            _obj("name", elem=_EXPR),
            _obj("const", name={"type": "string"}),
            _obj("hole", type=_EXPR),
            _obj("fst", arg=_TERM),
            _obj("snd", arg=_TERM),
            _obj("pair", left=_TERM, right=_TERM),
            _obj("app", fn=_TERM, arg=_TERM),
            _obj("lam", var=_TERM, body=_TERM),
        ),
    },
}


def expr_to_json(e: CatExpr) -> dict:
    if e is Top:
        return {"op": "top"}
    if isinstance(e, Gen):
        return {"op": "gen", "name": e.name}
    if isinstance(e, Indet):
        return {"op": "indet", "name": e.name, "type": expr_to_json(e.target)}
    if isinstance(e, Id):
        return {"op": "id", "arg": expr_to_json(e.arg)}
    if isinstance(e, Star):
        return {"op": "star", "arg": expr_to_json(e.arg)}
    op = _BIN.get(type(e))
    if op is None:
        raise GttError("cannot encode %r" % (e,))
    return {"op": op, "left": expr_to_json(e.left), "right": expr_to_json(e.right)}


def expr_from_json(d: dict) -> CatExpr:
    op = d["op"]
    if op == "top":
        return Top
    if op == "gen":
        return Gen(d["name"])
    if op == "indet":
        return Indet(d["name"], expr_from_json(d["type"]))
    if op == "id":
        return Id(expr_from_json(d["arg"]))
    if op == "star":
        return Star(expr_from_json(d["arg"]))
    return _BIN_INV[op](expr_from_json(d["left"]), expr_from_json(d["right"]))


def term_to_json(s: T.Term) -> dict:
    match s:
        case T.Var(t, n):
            return {"op": "var", "type": expr_to_json(t), "n": n}
        case T.Star():
            return {"op": "star"}
        case T.Name(a):
            return {"op": "name", "elem": expr_to_json(a)}
        case T.Const(k):
            return {"op": "const", "name": k}
        case T.Hole(t):
            return {"op": "hole", "type": expr_to_json(t)}
        case T.Fst(a):
            return {"op": "fst", "arg": term_to_json(a)}
        case T.Snd(a):
            return {"op": "snd", "arg": term_to_json(a)}
        case T.PairT(a, b):
            return {"op": "pair", "left": term_to_json(a), "right": term_to_json(b)}
        case T.App(f, a):
            return {"op": "app", "fn": term_to_json(f), "arg": term_to_json(a)}
        case T.Lam(v, b):
            return {"op": "lam", "var": term_to_json(v), "body": term_to_json(b)}
    raise GttError("cannot encode %r" % (s,))


def term_from_json(d: dict) -> T.Term:
    op = d["op"]
    if op == "var":
        return T.Var(expr_from_json(d["type"]), d["n"])
    if op == "star":
        return T.Star()
    if op == "name":
        return T.Name(expr_from_json(d["elem"]))
    if op == "const":
        return T.Const(d["name"])
    if op == "hole":
        return T.Hole(expr_from_json(d["type"]))
    if op in ("fst", "snd"):
        return (T.Fst if op == "fst" else T.Snd)(term_from_json(d["arg"]))
    if op == "pair":
        return T.PairT(term_from_json(d["left"]), term_from_json(d["right"]))
    if op == "app":
        return T.App(term_from_json(d["fn"]), term_from_json(d["arg"]))
    return T.Lam(term_from_json(d["var"]), term_from_json(d["body"]))


def document(kind: str, **fields) -> dict:
    return {"schema": "gtt", "version": SCHEMA_VERSION, "kind": kind, **fields}


def encode(item) -> dict:
    """Wrap an element or a term as a top-level document."""
    if isinstance(item, CatExpr):
        return document("expr", expr=expr_to_json(item))
    return document("term", term=term_to_json(item))


def validate(doc: dict) -> None:
    """Raise jsonschema.ValidationError when ``doc`` does not conform."""
    _validator().validate(doc)


_VALIDATOR = None


def _validator():
    global _VALIDATOR
    if _VALIDATOR is None:
        jsonschema.Draft202012Validator.check_schema(SCHEMA)
        _VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)
    return _VALIDATOR
