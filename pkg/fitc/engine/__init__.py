"""Plain terms, rational-tree unification and resolution."""

from .cycles import find_cycles, is_cyclic
from .solver import Solution, Solver
from .store import BindingStore, resolve, unify
from .terms import Atom, Compound, Num, Term, Var

__all__ = [
    "Atom", "BindingStore", "Compound", "Num", "Solution", "Solver", "Term", "Var",
    "find_cycles", "is_cyclic", "resolve", "unify",
]
