"""Flat term layouts for sorts and finite domains.

A sort is encoded as a compound `$sort(Id, Dim1.., Feat1..)`. The identity
slot exists only on intensional sorts directly below top; each dimension
slot holds the encoding of the chosen subsort, so a sort's term is nested
inside its parent's. A finite domain of n elements is a compound of n+1
arguments, anchored by 1 and 0 at the ends; leaving element k out of a set
unifies arguments k and k+1.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..decls.signature import TOP, DomainAtom, Signature
from ..engine.store import BindingStore
from ..engine.terms import Compound, Num, Term, Var, make
from ..errors import EmptyDomainError, SignatureError

logger = logging.getLogger(__name__)

FIRST_ANCHOR = 1
LAST_ANCHOR = 0


def functor_for(name: str) -> str:
    return "$" + name


class SortLayout(BaseModel):
    functor: str
    arity: int
    identity_slot: Optional[int] = None
    dimension_slots: List[int] = Field(default_factory=list)
    feature_slots: Dict[str, int] = Field(default_factory=dict)


class DomainLayout(BaseModel):
    functor: str
    arity: int
    elements: List[Tuple[DomainAtom, ...]]
    first_anchor: int = FIRST_ANCHOR
    last_anchor: int = LAST_ANCHOR

    def pair_of(self, index: int) -> Tuple[int, int]:
        return index, index + 1


class LayoutTable(BaseModel):
    sort_layouts: Dict[str, SortLayout] = Field(default_factory=dict)
    domain_layouts: Dict[str, DomainLayout] = Field(default_factory=dict)

    def sort_layout(self, sort: str) -> SortLayout:
        layout = self.sort_layouts.get(sort)
        if layout is None:
            raise SignatureError(f"unknown sort '{sort}'")
        return layout

    def functor_index(self) -> Dict[Tuple[str, int], Tuple[str, str]]:
        """(functor, arity) -> ("sort" | "domain", name)."""
        index = {}
        for name, layout in self.sort_layouts.items():
            index[(layout.functor, layout.arity)] = ("sort", name)
        for name, layout in self.domain_layouts.items():
            index[(layout.functor, layout.arity)] = ("domain", name)
        return index


def compute_layouts(sig: Signature) -> LayoutTable:
    """Assign functors and slots to every sort and finite domain."""
    table = LayoutTable()
    for name, info in sig.sorts.items():
        if name == TOP:
            continue
        slot = 0
        identity = None
        if info.parent == TOP and not info.extensional:
            identity = slot
            slot += 1
        dims = list(range(slot, slot + len(info.dimensions)))
        slot += len(info.dimensions)
        features = {}
        for feature, _ in info.intro_features:
            features[feature] = slot
            slot += 1
        table.sort_layouts[name] = SortLayout(
            functor=functor_for(name), arity=slot, identity_slot=identity,
            dimension_slots=dims, feature_slots=features)
    for name, info in sig.domains.items():
        table.domain_layouts[name] = DomainLayout(
            functor=functor_for(name), arity=len(info.elements) + 1,
            elements=list(info.elements))
    logger.info(f"Layouts: {len(table.sort_layouts)} sorts, {len(table.domain_layouts)} domains")
    return table


def skeleton(table: LayoutTable, sig: Signature, sort: str, fill_domains: bool = True) -> Term:
    """Most general encoding of a sort; a fresh variable for top."""
    if sort == TOP:
        return Var()
    term: Optional[Term] = None
    below_dimension = 0
    for name in reversed(sig.chain(sort)):
        layout = table.sort_layout(name)
        args: List[Term] = [Var() for _ in range(layout.arity)]
        if fill_domains:
            for feature, position in layout.feature_slots.items():
                restriction = sig.features[feature].restriction
                if restriction in table.domain_layouts:
                    args[position] = full_domain(table, restriction)
        if term is not None:
            args[layout.dimension_slots[below_dimension]] = term
        term = make(layout.functor, args)
        below_dimension = sig.sorts[name].parent_dimension
    return term


def full_domain(table: LayoutTable, domain: str) -> Term:
    layout = table.domain_layouts[domain]
    return encode_subset(table, domain, layout.elements)


def encode_subset(table: LayoutTable, domain: str, subset: Iterable[Sequence[DomainAtom]]) -> Term:
    """Encode a set of domain elements; excluded elements tie their argument pair."""
    layout = table.domain_layouts.get(domain)
    if layout is None:
        raise SignatureError(f"unknown finite domain '{domain}'")
    members = {tuple(e) for e in subset}
    if not members:
        raise EmptyDomainError(f"empty set of values for finite domain '{domain}'")

    parent = list(range(layout.arity))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k, element in enumerate(layout.elements):
        if tuple(element) not in members:
            a, b = find(k), find(k + 1)
            if a != b:
                parent[max(a, b)] = min(a, b)

    last = layout.arity - 1
    values: Dict[int, Term] = {find(0): Num(layout.first_anchor)}
    if find(last) in values:
        raise EmptyDomainError(f"empty set of values for finite domain '{domain}'")
    values[find(last)] = Num(layout.last_anchor)
    args = []
    for i in range(layout.arity):
        root = find(i)
        value = values.get(root)
        if value is None:
            value = values[root] = Var()
        args.append(value)
    return Compound(layout.functor, tuple(args))


def decode_subset(table: LayoutTable, domain: str, term: Term, store: BindingStore) -> List[int]:
    """Indices of the elements an encoding still allows."""
    layout = table.domain_layouts[domain]
    term = store.deref(term)
    if not isinstance(term, Compound) or term.functor != layout.functor or term.arity != layout.arity:
        raise SignatureError(f"not an encoding of finite domain '{domain}': {term!r}")
    args = [store.deref(a) for a in term.args]
    kept = []
    for k in range(len(layout.elements)):
        a, b = args[k], args[k + 1]
        if a is b or (isinstance(a, Num) and isinstance(b, Num) and a.value == b.value):
            continue
        kept.append(k)
    return kept


def feature_path(sig: Signature, table: LayoutTable, feature: str) -> List[int]:
    """Argument positions from the introducer's outermost functor to the feature slot."""
    introducer = sig.feature(feature).introducer
    chain = sig.chain(introducer)
    path = []
    for upper, lower in zip(chain, chain[1:]):
        dimension = sig.sorts[lower].parent_dimension
        path.append(table.sort_layout(upper).dimension_slots[dimension])
    path.append(table.sort_layout(introducer).feature_slots[feature])
    return path


def slot_value(term: Term, path: Iterable[int], store: BindingStore) -> Term:
    for position in path:
        term = store.deref(term)
        term = term.args[position]
    return term
