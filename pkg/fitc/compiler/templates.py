"""Compile-time template expansion.

A call `@name(A1..An)` is replaced by the value of each definition whose
head can match the arguments. Definitions are renamed apart per call.
Argument matching itself is left to compile-time unification: the value
is wrapped in a `Constrained` node pairing every call argument with the
corresponding head argument. Only a structural pre-check on plain terms
decides which definitions apply.
"""

import logging
from itertools import count, product
from typing import Dict, Iterator, List, Tuple

from ..decls.signature import Signature
from ..errors import TemplateError
from ..syntax.ast import (
    ANONYMOUS, Conj, Constrained, Disj, DoubleQuote, FeatVal, PlainConst, PlainStruct,
    PlainVar, Quote, Search, SourceTerm, TemplateCall,
)

logger = logging.getLogger(__name__)

_renaming = count(1)


def rename_apart(term: SourceTerm, mapping: Dict[str, str], suffix: int) -> SourceTerm:
    """Copy a term with every named variable renamed to a fresh name."""
    if isinstance(term, PlainVar):
        if term.name == ANONYMOUS:
            return term
        new = mapping.get(term.name)
        if new is None:
            new = mapping[term.name] = f"_T{suffix}_{term.name.lstrip('_')}"
        return PlainVar(new)
    return _map_children(term, lambda t: rename_apart(t, mapping, suffix))


def _map_children(term: SourceTerm, fn) -> SourceTerm:
    if _is_cons(term):
        items, tail = _spine(term)
        return _relist([fn(item) for item in items], fn(tail))
    if isinstance(term, PlainStruct):
        return PlainStruct(term.functor, tuple(fn(a) for a in term.args))
    if isinstance(term, FeatVal):
        return FeatVal(term.feature, fn(term.value))
    if isinstance(term, Conj):
        return Conj(fn(term.left), fn(term.right))
    if isinstance(term, Disj):
        return Disj(fn(term.left), fn(term.right))
    if isinstance(term, TemplateCall):
        return TemplateCall(term.name, tuple(fn(a) for a in term.args))
    if isinstance(term, Quote):
        return Quote(fn(term.inner))
    if isinstance(term, DoubleQuote):
        return DoubleQuote(fn(term.inner))
    if isinstance(term, Search):
        return Search(term.start, term.feature, fn(term.value))
    if isinstance(term, Constrained):
        return Constrained(fn(term.term), tuple((fn(a), fn(b)) for a, b in term.pairs))
    return term


class _Bindings:
    """Variable bindings for the plain-term pre-check."""

    def __init__(self):
        self.values: Dict[str, SourceTerm] = {}

    def walk(self, term: SourceTerm) -> SourceTerm:
        while isinstance(term, PlainVar) and term.name in self.values:
            term = self.values[term.name]
        return term

    def match(self, left: SourceTerm, right: SourceTerm) -> bool:
        pending = [(left, right)]
        while pending:
            left, right = pending.pop()
            left = self.walk(left)
            right = self.walk(right)
            if isinstance(left, PlainVar) or isinstance(right, PlainVar):
                var, other = (left, right) if isinstance(left, PlainVar) else (right, left)
                if var.name != ANONYMOUS and var != other:
                    self.values[var.name] = other
                continue
            if isinstance(left, PlainConst) and isinstance(right, PlainConst):
                if left.value != right.value or type(left.value) is not type(right.value):
                    return False
                continue
            if isinstance(left, PlainStruct) and isinstance(right, PlainStruct):
                if left.functor != right.functor or len(left.args) != len(right.args):
                    return False
                pending.extend(reversed(list(zip(left.args, right.args))))
                continue
            if isinstance(left, (PlainConst, PlainStruct)) and isinstance(right, (PlainConst, PlainStruct)):
                return False
            # a description on either side: decided when compiling
        return True


def _head_matches(call_args: Tuple[SourceTerm, ...], head_args: Tuple[SourceTerm, ...]) -> bool:
    bindings = _Bindings()
    return all(bindings.match(a, b) for a, b in zip(call_args, head_args))


class TemplateExpander:
    """Expands template calls against one signature's definitions."""

    def __init__(self, sig: Signature):
        self.sig = sig

    def expand(self, term: SourceTerm) -> List[SourceTerm]:
        """All expansions of `term`, in definition order, left to right."""
        return list(self._expand(term, ()))

    def _expand(self, term: SourceTerm, path: Tuple[str, ...]) -> Iterator[SourceTerm]:
        if isinstance(term, TemplateCall):
            yield from self._call(term, path)
            return
        if isinstance(term, Quote) or isinstance(term, (PlainVar, PlainConst)):
            yield term
            return
        if not _contains(term, TemplateCall):
            yield term
            return
        if _is_cons(term):
            yield from _spine_variants(term, lambda t: self._expand(t, path))
            return
        children = _children(term)
        if not children:
            yield term
            return
        options = [list(self._expand(child, path)) for child in children]
        for combination in product(*options):
            yield _rebuild(term, combination)

    def _call(self, call: TemplateCall, path: Tuple[str, ...]) -> Iterator[SourceTerm]:
        key = call.key
        if key in path:
            chain = " -> ".join(path[path.index(key):] + (key,))
            raise TemplateError(f"recursive template: {chain}")
        definitions = self.sig.templates.get(key)
        if not definitions:
            raise TemplateError(f"unknown template @{key}")

        arg_options = [list(self._expand(a, path)) for a in call.args]
        for args in product(*arg_options):
            matched = False
            for definition in definitions:
                suffix = next(_renaming)
                mapping: Dict[str, str] = {}
                head_args = tuple(rename_apart(a, mapping, suffix) for a in definition.head.args)
                if not _head_matches(args, head_args):
                    continue
                matched = True
                value = rename_apart(definition.body, mapping, suffix)
                logger.debug(f"Expanding @{key} with definition at line {definition.line}")
                expanded = Constrained(value, tuple(zip(args, head_args))) if args else value
                yield from self._expand(expanded, path + (key,))
            if not matched:
                raise TemplateError(f"no definition of @{key} matches the call")


def _is_cons(term: SourceTerm) -> bool:
    return isinstance(term, PlainStruct) and term.functor == "." and len(term.args) == 2


def _spine(term: SourceTerm) -> Tuple[List[SourceTerm], SourceTerm]:
    items: List[SourceTerm] = []
    while _is_cons(term):
        items.append(term.args[0])
        term = term.args[1]
    return items, term


def _relist(items, tail: SourceTerm) -> SourceTerm:
    for item in reversed(items):
        tail = PlainStruct(".", (item, tail))
    return tail


def _spine_variants(term: SourceTerm, variants) -> Iterator[SourceTerm]:
    """Variants of a list, taken element by element without descending the spine."""
    items, tail = _spine(term)
    options = [list(variants(part)) for part in items + [tail]]
    for combination in product(*options):
        yield _relist(combination[:-1], combination[-1])


def _contains(term: SourceTerm, kind) -> bool:
    """Whether `kind` occurs in `term` outside quotes."""
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, kind):
            return True
        stack.extend(_children(current))
    return False


def _children(term: SourceTerm) -> Tuple[SourceTerm, ...]:
    if isinstance(term, PlainStruct):
        return term.args
    if isinstance(term, FeatVal):
        return (term.value,)
    if isinstance(term, (Conj, Disj)):
        return term.left, term.right
    if isinstance(term, DoubleQuote):
        return (term.inner,)
    if isinstance(term, Search):
        return (term.value,)
    if isinstance(term, Constrained):
        flat: List[SourceTerm] = [term.term]
        for a, b in term.pairs:
            flat.extend((a, b))
        return tuple(flat)
    return ()


def _rebuild(term: SourceTerm, children) -> SourceTerm:
    if isinstance(term, PlainStruct):
        return PlainStruct(term.functor, tuple(children))
    if isinstance(term, FeatVal):
        return FeatVal(term.feature, children[0])
    if isinstance(term, Conj):
        return Conj(*children)
    if isinstance(term, Disj):
        return Disj(*children)
    if isinstance(term, DoubleQuote):
        return DoubleQuote(children[0])
    if isinstance(term, Search):
        return Search(term.start, term.feature, children[0])
    if isinstance(term, Constrained):
        pairs = tuple((children[i], children[i + 1]) for i in range(1, len(children), 2))
        return Constrained(children[0], pairs)
    return term


def expand_templates(term: SourceTerm, sig: Signature) -> List[SourceTerm]:
    return TemplateExpander(sig).expand(term)


def distribute(term: SourceTerm) -> Iterator[SourceTerm]:
    """Disjunction-free variants of a term, left branch first."""
    if isinstance(term, Disj):
        yield from distribute(term.left)
        yield from distribute(term.right)
        return
    if isinstance(term, Quote):
        yield term
        return
    if not _contains(term, Disj):
        yield term
        return
    if _is_cons(term):
        yield from _spine_variants(term, distribute)
        return
    children = _children(term)
    if not children:
        yield term
        return
    options = [list(distribute(child)) for child in children]
    for combination in product(*options):
        yield _rebuild(term, combination)
