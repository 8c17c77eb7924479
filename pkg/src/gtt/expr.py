"""Interned syntax trees for elements of freely presented ideal CCCs.

Every node is hash-consed: constructing a node whose key is already in the
session table returns the existing object, so equality of normal forms is a
pointer comparison.  Nodes built in different sessions still compare
structurally.
"""
from __future__ import annotations

import threading
from typing import Iterator

_lock = threading.Lock()
_table: dict[tuple, "CatExpr"] = {}


class CatExpr:
    __slots__ = ("_key", "_hash", "_size", "__weakref__")
    arity = 0

    def __new__(cls, *args):
        key = (cls.__name__,) + args
        node = _table.get(key)
        if node is not None:
            return node
        with _lock:
            node = _table.get(key)
            if node is None:
                node = object.__new__(cls)
                object.__setattr__(node, "_key", key)
                object.__setattr__(node, "_hash", hash(key))
                object.__setattr__(node, "_size", 1 + sum(
                    c._size for c in node.children))
                _table[key] = node
        return node

    def __setattr__(self, name, value):
        raise AttributeError("CatExpr nodes are immutable")

    def __reduce__(self):
        return (type(self), self._key[1:])

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, CatExpr) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "%s(%s)" % (self._key[0], ", ".join(map(repr, self._key[1:])))

    @property
    def args(self) -> tuple:
        return self._key[1:]

    @property
    def children(self) -> tuple["CatExpr", ...]:
        return tuple(a for a in self._key[1:] if isinstance(a, CatExpr))

    @property
    def size(self) -> int:
        return self._size

    def rebuild(self, children) -> "CatExpr":
        """Same constructor, new subexpressions (non-expression args kept)."""
        it = iter(children)
        return type(self)(*(next(it) if isinstance(a, CatExpr) else a
                            for a in self._key[1:]))

    def walk(self) -> Iterator["CatExpr"]:
        yield self
        for c in self.children:
            yield from c.walk()


class Gen(CatExpr):
    __slots__ = ()

    def __new__(cls, name: str):
        return super().__new__(cls, name)

    @property
    def name(self) -> str:
        return self._key[1]


class Indet(CatExpr):
    """An indeterminate x : top -> target."""
    __slots__ = ()

    def __new__(cls, name: str, target: CatExpr):
        return super().__new__(cls, name, target)

    @property
    def name(self) -> str:
        return self._key[1]

    @property
    def target(self) -> CatExpr:
        return self._key[2]

    @property
    def children(self) -> tuple:
        return ()

    def rebuild(self, children) -> CatExpr:
        return self


class _Top(CatExpr):
    __slots__ = ()

    def __new__(cls):
        return super().__new__(cls)

    def __repr__(self):
        return "Top"


def _unary(name):
    class Node(CatExpr):
        __slots__ = ()

        def __new__(cls, e: CatExpr):
            return CatExpr.__new__(cls, e)

        @property
        def arg(self) -> CatExpr:
            return self._key[1]
    Node.__name__ = Node.__qualname__ = name
    return Node


def _binary(name):
    class Node(CatExpr):
        __slots__ = ()

        def __new__(cls, left: CatExpr, right: CatExpr):
            return CatExpr.__new__(cls, left, right)

        @property
        def left(self) -> CatExpr:
            return self._key[1]

        @property
        def right(self) -> CatExpr:
            return self._key[2]
    Node.__name__ = Node.__qualname__ = name
    return Node


Id = _unary("Id")
Star = _unary("Star")
Comp = _binary("Comp")          # Comp(a, b) is "a . b": b first, then a
Turnstile = _binary("Turnstile")
Wedge = _binary("Wedge")
Pair = _binary("Pair")
Proj1 = _binary("Proj1")        # pi[A,B] : A /\ B -> A
Proj2 = _binary("Proj2")        # pi'[A,B] : A /\ B -> B
Eval = _binary("Eval")          # eps[A,B] : (A |- B) /\ A -> B

Top = _Top()

NODE_TYPES = {cls.__name__: cls for cls in
              (Gen, Indet, _Top, Id, Star, Comp, Turnstile, Wedge, Pair,
               Proj1, Proj2, Eval)}


def compose_chain(*parts: CatExpr) -> CatExpr:
    """``compose_chain(a, b, c)`` is ``a . b . c`` without any checking."""
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Comp(p, out)
    return out


def ter(a: CatExpr) -> CatExpr:
    """The terminal arrow a -> top, written ``top |- a``."""
    return Id(Top) if a == Top else Turnstile(Top, a)


def indets(e: CatExpr) -> set:
    return {n for n in e.walk() if isinstance(n, Indet)}


def generators(e: CatExpr) -> set[str]:
    return {n.name for n in e.walk() if isinstance(n, Gen)}


def has_indet(e: CatExpr, x: "Indet | None" = None) -> bool:
    for n in e.walk():
        if isinstance(n, Indet) and (x is None or n == x):
            return True
    return False


def table_size() -> int:
    return len(_table)
