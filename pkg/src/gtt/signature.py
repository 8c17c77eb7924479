"""Presentations: objects, generators, constants, validity seeds, order pairs."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedExpr, UnknownIndeterminate
from .expr import CatExpr, Gen, Indet, Top


@dataclass
class Signature:
    objects: list[str] = field(default_factory=list)
    generators: dict[str, tuple[CatExpr, CatExpr]] = field(default_factory=dict)
    constants: set[str] = field(default_factory=set)
    valid: list[CatExpr] = field(default_factory=list)
    order: list[tuple[CatExpr, CatExpr]] = field(default_factory=list)
    indets: dict[str, Indet] = field(default_factory=dict)

    # -- declarations -----------------------------------------------------
    def obj(self, name: str) -> Gen:
        self._fresh(name)
        self.objects.append(name)
        g = Gen(name)
        self.generators[name] = (g, g)
        return g

    def gen(self, name: str, source: CatExpr, target: CatExpr) -> Gen:
        self._fresh(name)
        for side in (source, target):
            self._check_declared(side)
        self.generators[name] = (source, target)
        return Gen(name)

    def const(self, name: str, type_: CatExpr) -> Gen:
        """A closed constant ``name : top -> type_``, a member of the constant set."""
        g = self.gen(name, Top, type_)
        self.constants.add(name)
        return g

    def indet(self, name: str, target: CatExpr) -> Indet:
        if name in self.indets or name in self.generators:
            raise MalformedExpr("duplicate declaration of %r" % name)
        self._check_declared(target)
        x = Indet(name, target)
        self.indets[name] = x
        return x

    def add_valid(self, e: CatExpr) -> None:
        self._check_declared(e)
        self.valid.append(e)

    def add_order(self, a: CatExpr, b: CatExpr) -> None:
        self._check_declared(a)
        self._check_declared(b)
        self.order.append((a, b))

    # -- queries ----------------------------------------------------------
    def is_object(self, name: str) -> bool:
        s, t = self.generators[name]
        return s == t == Gen(name)

    def boundaries(self, name: str) -> tuple[CatExpr, CatExpr]:
        try:
            return self.generators[name]
        except KeyError:
            raise MalformedExpr("undeclared generator %r" % name) from None

    def lookup_indet(self, name: str) -> Indet:
        try:
            return self.indets[name]
        except KeyError:
            raise UnknownIndeterminate("undeclared indeterminate %r" % name) from None

    def is_constant(self, name: str) -> bool:
        return name in self.constants

    def copy(self) -> "Signature":
        return Signature(list(self.objects), dict(self.generators),
                         set(self.constants), list(self.valid),
                         list(self.order), dict(self.indets))

    def _fresh(self, name: str) -> None:
        if name in self.generators or name in self.indets:
            raise MalformedExpr("duplicate declaration of %r" % name)

    def _check_declared(self, e: CatExpr) -> None:
        for n in e.walk():
            if isinstance(n, Gen) and n.name not in self.generators:
                raise MalformedExpr("undeclared name %r" % n.name)


def simple_signature(objects=(), gens=(), consts=()) -> Signature:
    """Convenience builder: ``gens`` are ``(name, src, tgt)`` with names or exprs."""
    sig = Signature()
    for o in objects:
        sig.obj(o)

    def ex(v):
        return Gen(v) if isinstance(v, str) else v
    for name, s, t in gens:
        sig.gen(name, ex(s), ex(t))
    for name, t in consts:
        sig.const(name, ex(t))
    return sig
