"""Depth-first resolution over compiled clauses.

Goals are kept as a linked list of `(goal, rest)` pairs so continuations
can be shared between choice points. Each choice point remembers the goal
it is trying, the remaining candidate clauses and the trail mark to undo
to before the next candidate.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import StepLimitError, UnknownPredicateError
from .store import BindingStore
from .terms import Atom, Compound, EQUALS, Num, Term, Var, indicator, rename

logger = logging.getLogger(__name__)

Goals = Optional[Tuple[Term, "Goals"]]


@dataclass
class Solution:
    """Bindings of the query's named variables under the final store."""
    bindings: Dict[str, Term]
    store: BindingStore

    def value(self, name: str) -> Term:
        return self.store.deref(self.bindings[name])


def _push(goals: Sequence[Term], rest: Goals) -> Goals:
    for goal in reversed(goals):
        rest = (goal, rest)
    return rest


def _first_arg_key(term: Term):
    if isinstance(term, Compound):
        return ("c", term.functor, len(term.args))
    if isinstance(term, Atom):
        return ("a", term.name)
    if isinstance(term, Num):
        return ("n", term.value)
    return None


class _ChoicePoint:
    __slots__ = ("goal", "rest", "clauses", "index", "mark")

    def __init__(self, goal, rest, clauses, mark):
        self.goal = goal
        self.rest = rest
        self.clauses = clauses
        self.index = 0
        self.mark = mark


class Solver:
    """Runs queries against one knowledge base.

    A solver holds no per-query state, so several queries may run at once,
    each with its own store.
    """

    def __init__(self, kb, unknown_predicate: str = "fail", max_steps: int = 0,
                 indexing: bool = True):
        self.kb = kb
        self.unknown_predicate = unknown_predicate
        self.max_steps = max_steps
        self.indexing = indexing

    def candidates(self, goal: Term, store: BindingStore) -> list:
        name, arity = indicator(goal)
        clauses = self.kb.clauses_for(name, arity)
        if not clauses and self.unknown_predicate == "error" and not self.kb.defines(name, arity):
            raise UnknownPredicateError(f"unknown predicate {name}/{arity}")
        if not self.indexing or arity == 0 or len(clauses) < 2:
            return clauses
        key = _first_arg_key(store.deref(goal.args[0]))
        if key is None:
            return clauses
        return [c for c in clauses if _first_arg_key(c.head.args[0]) in (None, key)]

    def solve(self, goals: Sequence[Term], store: Optional[BindingStore] = None,
              variables: Optional[Dict[str, Var]] = None) -> Iterator[Solution]:
        """Solutions in depth-first, source clause order, produced on demand."""
        store = store if store is not None else BindingStore()
        variables = variables or {}
        stack: List[_ChoicePoint] = []
        current: Goals = _push(goals, None)
        steps = 0
        start = store.mark()

        while True:
            if current is None:
                yield Solution(dict(variables), store.snapshot())
                current = self._backtrack(stack, store)
                if current is False:
                    store.undo(start)
                    logger.debug(f"No more solutions after {steps} steps")
                    return
                continue

            steps += 1
            if self.max_steps and steps > self.max_steps:
                logger.warning(f"Step limit of {self.max_steps} reached")
                raise StepLimitError(f"gave up after {self.max_steps} resolution steps")

            goal, rest = current
            goal = store.deref(goal)
            if isinstance(goal, Var):
                raise UnknownPredicateError("goal is an unbound variable")
            if isinstance(goal, Num):
                raise UnknownPredicateError(f"goal is a number: {goal!r}")
            if isinstance(goal, Atom) and goal.name == "true":
                current = rest
                continue
            if isinstance(goal, Compound) and goal.functor == EQUALS and len(goal.args) == 2:
                if store.unify(goal.args[0], goal.args[1]):
                    current = rest
                else:
                    current = self._backtrack(stack, store)
                    if current is False:
                        store.undo(start)
                        return
                continue

            clauses = self.candidates(goal, store)
            if clauses:
                stack.append(_ChoicePoint(goal, rest, clauses, store.mark()))
            current = self._backtrack(stack, store)
            if current is False:
                store.undo(start)
                return

    def _backtrack(self, stack: List[_ChoicePoint], store: BindingStore):
        """Try the next candidate clause of the newest choice point; False when none is left."""
        while stack:
            point = stack[-1]
            store.undo(point.mark)
            while point.index < len(point.clauses):
                clause = point.clauses[point.index]
                point.index += 1
                mapping: Dict[Var, Var] = {}
                head = rename(clause.head, mapping)
                if store.unify(head, point.goal):
                    body = [rename(g, mapping) for g in clause.body]
                    if point.index >= len(point.clauses):
                        stack.pop()
                    return _push(body, point.rest)
            stack.pop()
        return False
