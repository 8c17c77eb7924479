"""Lambda-term syntax.

Types are CatExprs in type normal form (see ``nbe.tnf``).  Standard
variables are ``Var(T, n)`` with ``n >= 1``; the order on the variables of
one type is the order on ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .expr import CatExpr


class Term:
    __slots__ = ()

    @property
    def children(self) -> tuple["Term", ...]:
        return ()

    def walk(self) -> Iterator["Term"]:
        yield self
        for c in self.children:
            yield from c.walk()

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)


@dataclass(frozen=True, slots=True)
class Var(Term):
    type: CatExpr
    n: int

    def __repr__(self):
        return "v(%r,%d)" % (self.type, self.n)


@dataclass(frozen=True, slots=True)
class Star(Term):
    """The unique inhabitant ``*`` of top."""

    def __repr__(self):
        return "star"


@dataclass(frozen=True, slots=True)
class Name(Term):
    """``name(A)``: the name of an element A, of type ``s(A) |- t(A)``."""
    elem: CatExpr


@dataclass(frozen=True, slots=True)
class Const(Term):
    """A declared constant ``k : T`` (a closed term of type T)."""
    name: str


@dataclass(frozen=True, slots=True)
class Hole(Term):
    """Generic inhabitant of T.  Only produced internally by translation."""
    type: CatExpr


@dataclass(frozen=True, slots=True)
class Fst(Term):
    arg: Term

    @property
    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Snd(Term):
    arg: Term

    @property
    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class PairT(Term):
    left: Term
    right: Term

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term

    @property
    def children(self):
        return (self.fn, self.arg)


@dataclass(frozen=True, slots=True)
class Lam(Term):
    var: Var
    body: Term

    @property
    def children(self):
        return (self.body,)


def free_vars(s: Term, validating=frozenset()) -> frozenset:
    """Free standard variables, excluding validating ones."""
    match s:
        case Var():
            return frozenset() if s in validating else frozenset([s])
        case Lam(v, body):
            return free_vars(body, validating) - {v}
        case _:
            out = frozenset()
            for c in s.children:
                out |= free_vars(c, validating)
            return out


def all_vars(s: Term) -> frozenset:
    """VAR(s): every variable occurring in s, bound or free."""
    out = set()
    for n in s.walk():
        if isinstance(n, Var):
            out.add(n)
        elif isinstance(n, Lam):
            out.add(n.var)
    return frozenset(out)


def binders(s: Term) -> frozenset:
    return frozenset(n.var for n in s.walk() if isinstance(n, Lam))


def has_hole(s: Term) -> bool:
    return any(isinstance(n, Hole) for n in s.walk())


def rebuild(s: Term, children) -> Term:
    match s:
        case Fst():
            return Fst(children[0])
        case Snd():
            return Snd(children[0])
        case PairT():
            return PairT(children[0], children[1])
        case App():
            return App(children[0], children[1])
        case Lam(v, _):
            return Lam(v, children[0])
    return s
