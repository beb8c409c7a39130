"""Plain first-order terms.

Every sorted feature term ends up as one of these. Variables compare by
identity; atoms, numbers and compounds compare structurally.
"""

from dataclasses import dataclass
from itertools import count
from typing import Dict, Iterator, List, Optional, Tuple, Union

_fresh = count()


class Var:
    """A logic variable. The optional name is only used for display."""

    __slots__ = ("name", "serial")

    def __init__(self, name: Optional[str] = None):
        self.name = name
        self.serial = next(_fresh)

    def __repr__(self) -> str:
        return self.name if self.name else f"_G{self.serial}"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Num:
    value: Union[int, float]

    def __repr__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: Tuple["Term", ...]

    @property
    def arity(self) -> int:
        return len(self.args)

    def __repr__(self) -> str:
        return f"{self.functor}({', '.join(repr(a) for a in self.args)})"


Term = Union[Var, Atom, Num, Compound]

NIL = Atom("[]")
LIST_FUNCTOR = "."
EQUALS = "="
TRUE = Atom("true")


def make(functor: str, args) -> Term:
    """Build a compound, collapsing zero-arity compounds to atoms."""
    args = tuple(args)
    if not args:
        return Atom(functor)
    return Compound(functor, args)


def make_list(items: List[Term], tail: Term = NIL) -> Term:
    result = tail
    for item in reversed(items):
        result = Compound(LIST_FUNCTOR, (item, result))
    return result


def indicator(term: Term) -> Optional[Tuple[str, int]]:
    """Name/arity of a callable term, None for variables and numbers."""
    if isinstance(term, Compound):
        return term.functor, len(term.args)
    if isinstance(term, Atom):
        return term.name, 0
    return None


def variables(term: Term) -> Iterator[Var]:
    """Variables of an unbound term, first-occurrence order, no repeats."""
    seen = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            if t not in seen:
                seen.add(t)
                yield t
        elif isinstance(t, Compound):
            stack.extend(reversed(t.args))


def rename(term: Term, mapping: Dict[Var, Var]) -> Term:
    """Copy a term with fresh variables; `mapping` is extended in place.

    The last argument of each compound is followed in a loop, so long lists
    do not deepen the Python stack.
    """
    spine: List[Tuple[str, Tuple[Term, ...]]] = []
    while isinstance(term, Compound) and term.args:
        spine.append((term.functor, tuple(rename(a, mapping) for a in term.args[:-1])))
        term = term.args[-1]
    if isinstance(term, Var):
        fresh = mapping.get(term)
        if fresh is None:
            fresh = mapping[term] = Var(term.name)
        term = fresh
    for functor, init in reversed(spine):
        term = Compound(functor, init + (term,))
    return term
