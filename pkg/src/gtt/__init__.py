"""Freely presented ideal cartesian closed categories and the typed lambda
calculus over the same signature, with translations both ways."""
from .errors import GttError
from .expr import (CatExpr, Comp, Eval, Gen, Id, Indet, Pair, Proj1, Proj2,
                   Star, Top, Turnstile, Wedge, ter)
from .signature import Signature, simple_signature

__all__ = ["GttError", "CatExpr", "Comp", "Eval", "Gen", "Id", "Indet", "Pair",
           "Proj1", "Proj2", "Star", "Top", "Turnstile", "Wedge", "ter",
           "Signature", "simple_signature"]
__version__ = "0.1.0"
