"""Decompilation of plain terms back into feature-term syntax.

Sort encodings become `<Sort & feature!value` conjunctions, finite domain
encodings become the set of elements they still allow, and everything else
passes through. Features whose value carries no information are left out.
A node reached more than once is written `Tag & Term` where it first
appears and as the bare tag afterwards; this covers both shared and cyclic
structure.
"""

import logging
from collections import Counter
from typing import Dict, Hashable, Iterable, List, Optional, Set, Tuple

from ..compiler.layout import LayoutTable, decode_subset
from ..decls.findom import domains_containing
from ..decls.signature import TOP, Signature
from ..engine.store import BindingStore
from ..engine.terms import Atom, Compound, Num, Term, Var
from ..errors import DecodeError
from ..syntax.ast import (
    Conj, Elided, FDAnd, FDAnnot, FDAtom, FDOr, FDWhole, FeatVal, FinDom, FinDomExpr,
    PlainConst, PlainStruct, PlainVar, SortRef, SourceTerm,
)
from ..syntax.printer import tag_name

logger = logging.getLogger(__name__)


def _conjoin(items: List[SourceTerm]) -> SourceTerm:
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Conj(item, result)
    return result


def findom_expression(sig: Signature, domain: str, indices: Iterable[int]) -> FinDomExpr:
    """Canonical expression for a non-empty set of domain elements."""
    info = sig.domains[domain]
    indices = sorted(indices)
    if not indices:
        raise DecodeError(f"empty value set for finite domain '{domain}'")
    if len(indices) == len(info.elements):
        return FDAnnot(FDWhole(), domain)

    def element(values) -> FinDomExpr:
        expr: FinDomExpr = FDAtom(values[-1])
        for value in reversed(values[:-1]):
            expr = FDAnd(FDAtom(value), expr)
        return expr

    parts = [element(info.elements[i]) for i in indices]
    expr = parts[-1]
    for part in reversed(parts[:-1]):
        expr = FDOr(part, expr)

    atoms = {a for i in indices for a in info.elements[i]}
    identifies = any(isinstance(a, str) and domains_containing(sig, a) == [domain] for a in atoms)
    if isinstance(expr, FDAtom) or not identifies:
        expr = FDAnnot(expr, domain)
    return expr


class Decoder:
    """Decodes terms that live in one store; tags are shared across calls."""

    def __init__(self, store: BindingStore, table: LayoutTable, sig: Signature,
                 var_names: Optional[Dict[Var, str]] = None,
                 taken: Iterable[str] = (), cyclic_print: bool = True,
                 truncate_depth: int = 3):
        self.store = store
        self.table = table
        self.sig = sig
        self.functors = table.functor_index()
        self.var_names = dict(var_names or {})
        self.taken: Set[str] = set(taken) | set(self.var_names.values())
        self.cyclic_print = cyclic_print
        self.truncate_depth = truncate_depth

        self.visits: Counter = Counter()
        self.var_count: Counter = Counter()
        self.cyclic: Set[Hashable] = set()
        self.tags: Dict[Hashable, str] = {}
        self.generated: Dict[Hashable, str] = {}
        self.counter = 0
        self.path: Counter = Counter()
        self.truncated = False

    # -- naming -----------------------------------------------------------

    def fresh_name(self) -> str:
        while True:
            name = tag_name(self.counter)
            self.counter += 1
            if name not in self.taken:
                self.taken.add(name)
                return name

    def var_name(self, var: Var) -> str:
        name = self.var_names.get(var)
        if name is None:
            name = self.var_names[var] = self.fresh_name()
        return name

    # -- node structure ---------------------------------------------------

    def classify(self, t: Term) -> Tuple[str, Optional[str]]:
        if isinstance(t, Var):
            return "var", None
        if isinstance(t, Num):
            return "plain", None
        name, arity = (t.name, 0) if isinstance(t, Atom) else (t.functor, len(t.args))
        found = self.functors.get((name, arity))
        if found is not None:
            kind, what = found
            if kind == "sort" and self.sig.sorts[what].parent != TOP:
                raise DecodeError(f"'{name}' appears outside its parent sort")
            return kind, what
        if name.startswith("$") and name != "[]":
            raise DecodeError(f"malformed encoded term with functor '{name}/{arity}'")
        return "plain", None

    def key(self, t: Term, kind: str, what: Optional[str]) -> Hashable:
        if kind == "sort":
            layout = self.table.sort_layouts[what]
            if layout.identity_slot is not None:
                identity = self.store.deref(t.args[layout.identity_slot])
                if isinstance(identity, Var):
                    return ("id", id(identity))
        if kind == "domain":
            args = []
            for a in t.args:
                a = self.store.deref(a)
                args.append(("v", id(a)) if isinstance(a, Var) else ("n", a.value))
            return ("dom", t.functor, tuple(args))
        return ("obj", id(t))

    def parts(self, t: Term, sort: str) -> Tuple[List[str], List[Tuple[str, Term]]]:
        """Most specific sorts per dimension, and feature slots ancestor-first."""
        layout = self.table.sort_layouts[sort]
        args = t.args if isinstance(t, Compound) else ()
        if len(args) != layout.arity:
            raise DecodeError(f"'{layout.functor}' should have {layout.arity} arguments")
        features = [(f, args[slot]) for f, slot in layout.feature_slots.items()]
        specific: List[str] = []
        for dimension, slot in enumerate(layout.dimension_slots):
            value = self.store.deref(args[slot])
            if isinstance(value, Var):
                continue
            name = value.name if isinstance(value, Atom) else getattr(value, "functor", None)
            arity = len(value.args) if isinstance(value, Compound) else 0
            found = self.functors.get((name, arity))
            child = found[1] if found and found[0] == "sort" else None
            info = self.sig.sorts.get(child) if child else None
            if info is None or info.parent != sort or info.parent_dimension != dimension:
                raise DecodeError(f"unexpected '{name}' in dimension {dimension + 1} of '{sort}'")
            sub_specific, sub_features = self.parts(value, child)
            specific.extend(sub_specific)
            features.extend(sub_features)
        return specific or [sort], features

    def children(self, t: Term, kind: str, what: Optional[str]) -> List[Term]:
        if kind == "sort":
            return [v for _, v in self.parts(t, what)[1]]
        if kind == "plain" and isinstance(t, Compound):
            return list(t.args)
        return []

    # -- analysis ---------------------------------------------------------

    def analyze(self, term: Term) -> None:
        """Count visits per node and note the nodes that re-enter themselves."""
        on_path: Set[Hashable] = set()
        work: List[Tuple[bool, object]] = [(False, term)]
        while work:
            leaving, item = work.pop()
            if leaving:
                on_path.discard(item)
                continue
            t = self.store.deref(item)
            kind, what = self.classify(t)
            if kind == "var":
                self.var_count[t] += 1
                continue
            if isinstance(t, (Atom, Num)):
                continue
            k = self.key(t, kind, what)
            self.visits[k] += 1
            if k in on_path:
                self.cyclic.add(k)
                continue
            if self.visits[k] > 1:
                continue
            on_path.add(k)
            work.append((True, k))
            work.extend((False, child) for child in reversed(self.children(t, kind, what)))

    def needs_tag(self, k: Hashable) -> bool:
        if self.visits[k] < 2:
            return False
        return self.cyclic_print or k not in self.cyclic

    # -- output -----------------------------------------------------------

    def omitted(self, value: Term) -> bool:
        t = self.store.deref(value)
        if isinstance(t, Var):
            return self.var_count[t] <= 1 and t not in self.var_names
        kind, what = self.classify(t)
        if kind == "domain":
            k = self.key(t, kind, what)
            if self.visits[k] > 1:
                return False
            full = len(self.table.domain_layouts[what].elements)
            return len(decode_subset(self.table, what, t, self.store)) == full
        return False

    def build(self, term: Term, restriction: Optional[str] = None) -> SourceTerm:
        # plain compounds are followed along their last argument in a loop;
        # `spine` holds (key, tag, functor, earlier arguments) for each of them
        spine: List[Tuple[Hashable, Optional[str], str, Tuple[SourceTerm, ...]]] = []
        try:
            while True:
                t = self.store.deref(term)
                kind, what = self.classify(t)
                if kind == "var":
                    result: SourceTerm = PlainVar(self.var_name(t))
                    break
                if isinstance(t, Atom) and kind == "plain":
                    result = PlainConst(t.name)
                    break
                if isinstance(t, Num):
                    result = PlainConst(t.value)
                    break

                k = self.key(t, kind, what)
                tag = self.tags.get(k)
                if tag is not None:
                    result = PlainVar(tag)
                    break
                if self.path[k]:
                    if self.path[k] >= self.truncate_depth:
                        if not self.truncated:
                            logger.warning("Cyclic answer printed truncated; enable cyclic printing to see it")
                            self.truncated = True
                        result = Elided()
                        break
                elif self.needs_tag(k):
                    tag = self.tags[k] = self.fresh_name()

                self.path[k] += 1
                if kind == "plain" and isinstance(t, Compound) and t.args:
                    spine.append((k, tag, t.functor, tuple(self.build(a) for a in t.args[:-1])))
                    term, restriction = t.args[-1], None
                    continue
                try:
                    result = self.body(t, kind, what, restriction)
                finally:
                    self.path[k] -= 1
                if tag is not None:
                    result = Conj(PlainVar(tag), result)
                break
        finally:
            for k, *_ in spine:
                self.path[k] -= 1

        for _, tag, functor, init in reversed(spine):
            result = PlainStruct(functor, init + (result,))
            if tag is not None:
                result = Conj(PlainVar(tag), result)
        return result

    def body(self, t: Term, kind: str, what: Optional[str], restriction: Optional[str]) -> SourceTerm:
        if kind == "domain":
            indices = decode_subset(self.table, what, t, self.store)
            return FinDom(findom_expression(self.sig, what, indices))
        if kind == "plain":
            return PlainStruct(t.functor, tuple(self.build(a) for a in t.args))

        sorts, features = self.parts(t, what)
        shown = [(f, v) for f, v in features if not self.omitted(v)]
        introducers = {self.sig.features[f].introducer for f, _ in shown}
        items: List[SourceTerm] = [
            SortRef(s) for s in sorts if s != restriction and s not in introducers
        ]
        for feature, value in shown:
            inner = self.sig.features[feature].restriction
            items.append(FeatVal(feature, self.build(value, inner)))
        if not items:
            items = [SortRef(s) for s in sorts]
        return _conjoin(items)

    def decode(self, term: Term) -> SourceTerm:
        self.analyze(term)
        return self.build(term)

    def decode_all(self, terms: List[Term]) -> List[SourceTerm]:
        """Decode several terms with tags shared between them."""
        for term in terms:
            self.analyze(term)
        return [self.build(term) for term in terms]


def decode(term: Term, store: BindingStore, table: LayoutTable, sig: Signature,
           **options) -> SourceTerm:
    return Decoder(store, table, sig, **options).decode(term)
