"""Binding store and rational-tree unification.

No occur check is made: binding X to f(X) is legal and denotes the infinite
tree f(f(...)). Unification of two compounds that are already being unified
further up the same call is assumed to succeed, which is what makes the
algorithm terminate on cyclic terms.
"""

from typing import Dict, List, Optional, Set, Tuple

from .terms import Atom, Compound, Num, Term, Var

_COPY, _BUILD, _FINISH = range(3)


class BindingStore:
    """Variable bindings plus the trail needed to undo them."""

    __slots__ = ("bindings", "trail")

    def __init__(self, bindings: Optional[Dict[Var, Term]] = None):
        self.bindings: Dict[Var, Term] = dict(bindings) if bindings else {}
        self.trail: List[Var] = []

    def deref(self, term: Term) -> Term:
        bindings = self.bindings
        while isinstance(term, Var):
            bound = bindings.get(term)
            if bound is None:
                return term
            term = bound
        return term

    def bind(self, var: Var, term: Term) -> None:
        self.bindings[var] = term
        self.trail.append(var)

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        trail = self.trail
        bindings = self.bindings
        while len(trail) > mark:
            del bindings[trail.pop()]

    def snapshot(self) -> "BindingStore":
        """An independent copy of the current bindings with an empty trail."""
        return BindingStore(self.bindings)

    def unify(self, left: Term, right: Term) -> bool:
        """Unify in place; on failure the store is restored and False returned."""
        mark = len(self.trail)
        if self._unify(left, right):
            return True
        self.undo(mark)
        return False

    def _unify(self, left: Term, right: Term) -> bool:
        deref = self.deref
        bind = self.bind
        assumed = set()
        stack = [(left, right)]
        while stack:
            a, b = stack.pop()
            a = deref(a)
            b = deref(b)
            if a is b:
                continue
            if isinstance(a, Var):
                bind(a, b)
                continue
            if isinstance(b, Var):
                bind(b, a)
                continue
            if isinstance(a, Compound):
                if not isinstance(b, Compound):
                    return False
                if a.functor != b.functor or len(a.args) != len(b.args):
                    return False
                key = (id(a), id(b))
                if key in assumed:
                    continue
                assumed.add(key)
                stack.extend(zip(a.args, b.args))
                continue
            if isinstance(b, Compound):
                return False
            if type(a) is not type(b) or a != b:
                return False
        return True

    def equal(self, left: Term, right: Term) -> bool:
        """Structural identity under the store (variables must be the same)."""
        a = self.deref(left)
        b = self.deref(right)
        if a is b:
            return True
        if isinstance(a, (Atom, Num)) and type(a) is type(b):
            return a == b
        return False


def unify(left: Term, right: Term, store: BindingStore) -> Optional[BindingStore]:
    """Functional form: the updated store, or None on failure."""
    return store if store.unify(left, right) else None


def resolve(term: Term, store: BindingStore,
            memo: Optional[Dict[Var, Term]] = None,
            equations: Optional[List[Tuple[Var, Term]]] = None) -> Tuple[Term, List[Tuple[Var, Term]]]:
    """Copy `term` out of `store` into a binding-free term.

    Bound variables are replaced by copies of their values and unbound ones
    are kept. A variable whose value contains the variable itself cannot be
    replaced; it stays in place and a `(var, value)` equation is returned
    instead. Passing the same `memo` and `equations` to several calls keeps
    sharing consistent across them.
    """
    if memo is None:
        memo = {}
    if equations is None:
        equations = []
    bindings = store.bindings
    active: Set[Var] = set()
    reentered: Set[Var] = set()
    results: List[Term] = []
    work: List[Tuple[int, object]] = [(_COPY, term)]

    while work:
        op, item = work.pop()
        if op == _BUILD:
            start = len(results) - len(item.args)
            args = tuple(results[start:])
            del results[start:]
            results.append(Compound(item.functor, args))
            continue
        if op == _FINISH:
            value = results.pop()
            active.discard(item)
            # the copy met the variable again, so its value is cyclic
            if item in reentered:
                equations.append((item, value))
                value = item
            memo[item] = value
            results.append(value)
            continue

        if isinstance(item, Compound) and item.args:
            work.append((_BUILD, item))
            work.extend((_COPY, a) for a in reversed(item.args))
            continue
        if not isinstance(item, Var):
            results.append(item)
            continue
        t = item
        while True:
            done = memo.get(t)
            if done is not None:
                results.append(done)
                break
            bound = bindings.get(t)
            if bound is None:
                results.append(t)
                break
            if t in active:
                reentered.add(t)
                results.append(t)
                break
            if isinstance(bound, Var):
                t = bound
                continue
            active.add(t)
            work.append((_FINISH, t))
            work.append((_COPY, bound))
            break

    return results[0], equations
