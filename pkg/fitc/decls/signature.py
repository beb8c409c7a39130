"""Sort hierarchy, feature appropriateness and template registry."""

import logging
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from ..errors import SignatureError
from ..syntax.ast import (
    CombinedDecl, ExtensionalDecl, FinDomDecl, IntroDecl, SubsortDecl, TemplateDef,
)

logger = logging.getLogger(__name__)

TOP = "top"

DomainAtom = Union[int, str]


class SortInfo(BaseModel):
    """Position of one sort in the hierarchy."""
    parent: Optional[str] = None
    parent_dimension: int = 0
    dimensions: List[List[str]] = Field(default_factory=list)
    intro_features: List[Tuple[str, str]] = Field(default_factory=list)
    extensional: bool = False


class FeatureInfo(BaseModel):
    introducer: str
    restriction: str = TOP


class DomainInfo(BaseModel):
    """A finite domain; element order has the first dimension varying fastest."""
    dimensions: List[List[DomainAtom]]
    elements: List[Tuple[DomainAtom, ...]] = Field(default_factory=list)


class Signature(BaseModel):
    """Validated declarations of one program."""
    sorts: Dict[str, SortInfo] = Field(default_factory=dict)
    features: Dict[str, FeatureInfo] = Field(default_factory=dict)
    domains: Dict[str, DomainInfo] = Field(default_factory=dict)
    templates: Dict[str, List[Any]] = Field(default_factory=dict, exclude=True)

    def is_sort(self, name: str) -> bool:
        return name in self.sorts

    def is_domain(self, name: str) -> bool:
        return name in self.domains

    def sort(self, name: str) -> SortInfo:
        info = self.sorts.get(name)
        if info is None:
            raise SignatureError(f"unknown sort '{name}'")
        return info

    def feature(self, name: str) -> FeatureInfo:
        info = self.features.get(name)
        if info is None:
            raise SignatureError(f"unknown feature '{name}'")
        return info

    def chain(self, name: str) -> List[str]:
        """The sort and its ancestors, most general first, top excluded."""
        chain = []
        current = name
        while current != TOP:
            chain.append(current)
            current = self.sort(current).parent
        chain.reverse()
        return chain

    def subsumes(self, general: str, specific: str) -> bool:
        return general == TOP or general in self.chain(specific)

    def available_features(self, name: str) -> List[Tuple[str, str]]:
        """Features appropriate for a sort, ancestor-first."""
        self.sort(name)
        features: List[Tuple[str, str]] = []
        for sort in self.chain(name):
            features.extend(self.sorts[sort].intro_features)
        return features

    def children(self, name: str) -> List[str]:
        return [s for dim in self.sort(name).dimensions for s in dim]

    def template_definitions(self, name: str, arity: int) -> List[TemplateDef]:
        return self.templates.get(f"{name}/{arity}", [])


class _Builder:
    def __init__(self):
        self.sig = Signature(sorts={TOP: SortInfo()})
        self.declared: List[str] = []
        self.defined_at: Dict[str, Any] = {}
        self.intro_at: Dict[str, Any] = {}

    def fail(self, message: str, item: Any) -> SignatureError:
        return SignatureError(message, getattr(item, "file", None), getattr(item, "line", None))

    def declare(self, name: str) -> None:
        if name not in self.sig.sorts:
            self.sig.sorts[name] = SortInfo()
            self.declared.append(name)

    def subsorts(self, item: Union[SubsortDecl, CombinedDecl]) -> None:
        sup = item.super
        if sup in self.defined_at:
            raise self.fail(f"sort '{sup}' is defined more than once", item)
        self.defined_at[sup] = item
        self.declare(sup)
        if sup == TOP and len(item.dimensions) > 1:
            raise self.fail("top may have only one dimension", item)
        for dim in item.dimensions:
            for sub in dim:
                if sub == TOP:
                    raise self.fail("top cannot be a subsort", item)
                self.declare(sub)
        self.sig.sorts[sup].dimensions = [list(dim) for dim in item.dimensions]

    def intro(self, item: Union[IntroDecl, CombinedDecl], sort: str) -> None:
        if sort == TOP:
            raise self.fail("top cannot introduce features", item)
        self.declare(sort)
        for feature, restriction in item.features:
            if feature in self.sig.features:
                first = self.sig.features[feature].introducer
                raise self.fail(f"feature '{feature}' is introduced at both '{first}' and '{sort}'", item)
            self.sig.features[feature] = FeatureInfo(introducer=sort, restriction=restriction)
            self.sig.sorts[sort].intro_features.append((feature, restriction))
            self.intro_at[feature] = item

    def domain(self, item: FinDomDecl) -> None:
        name = item.name
        if name in self.sig.domains:
            raise self.fail(f"finite domain '{name}' is declared twice", item)
        seen = set()
        for dim in item.dimensions:
            for atom in dim:
                if atom in seen:
                    raise self.fail(f"duplicate element '{atom}' in finite domain '{name}'", item)
                seen.add(atom)
        dims = [list(dim) for dim in item.dimensions]
        # first dimension varies fastest
        elements = [tuple(reversed(combo)) for combo in product(*reversed(dims))]
        self.sig.domains[name] = DomainInfo(dimensions=dims, elements=elements)

    def link(self) -> None:
        """Set parents, adopt orphans under top and reject cycles."""
        sorts = self.sig.sorts
        parent_item: Dict[str, Any] = {}
        for sup, item in self.defined_at.items():
            for index, dim in enumerate(sorts[sup].dimensions):
                for sub in dim:
                    if sub in parent_item:
                        other = sorts[sub].parent
                        if other == sup:
                            raise self.fail(f"sort '{sub}' is listed twice under '{sup}'", item)
                        raise self.fail(
                            f"sort '{sub}' is a subsort of both '{other}' and '{sup}'", item)
                    parent_item[sub] = item
                    sorts[sub].parent = sup
                    sorts[sub].parent_dimension = index

        for name in self.declared:
            self.check_acyclic(name, parent_item)

        top = sorts[TOP]
        if not top.dimensions:
            top.dimensions = [[]]
        for name in self.declared:
            if sorts[name].parent is None:
                sorts[name].parent = TOP
                sorts[name].parent_dimension = 0
                top.dimensions[0].append(name)
        if not top.dimensions[0]:
            top.dimensions = []

    def check_acyclic(self, name: str, parent_item: Dict[str, Any]) -> None:
        path = [name]
        current = self.sig.sorts[name].parent
        while current is not None and current != TOP:
            if current in path:
                cycle = " > ".join(path[path.index(current):][::-1] + [current])
                raise self.fail(f"cyclic sort hierarchy: {cycle}", parent_item.get(name))
            path.append(current)
            current = self.sig.sorts[current].parent

    def check_restrictions(self) -> None:
        for feature, info in self.sig.features.items():
            r = info.restriction
            if r != TOP and r not in self.sig.sorts and r not in self.sig.domains:
                raise self.fail(
                    f"unknown sort or domain '{r}' in restriction of feature '{feature}'",
                    self.intro_at[feature])

    def check_namespaces(self, domain_items: Dict[str, FinDomDecl]) -> None:
        for name, item in domain_items.items():
            if name in self.sig.sorts:
                raise self.fail(f"'{name}' names both a sort and a finite domain", item)

    def extensional(self, item: ExtensionalDecl) -> None:
        for name in item.sorts:
            info = self.sig.sorts.get(name)
            if info is None:
                raise self.fail(f"unknown sort '{name}' declared extensional", item)
            if info.parent != TOP:
                raise self.fail(
                    f"only immediate subsorts of top can be extensional, not '{name}'", item)
            self.mark_extensional(name)

    def mark_extensional(self, name: str) -> None:
        stack = [name]
        while stack:
            sort = stack.pop()
            self.sig.sorts[sort].extensional = True
            stack.extend(self.sig.children(sort))


def build_signature(items: Iterable[Any]) -> Signature:
    """Validate declaration items into a Signature; clause items are ignored."""
    builder = _Builder()
    domain_items: Dict[str, FinDomDecl] = {}
    extensional: List[ExtensionalDecl] = []
    for item in items:
        if isinstance(item, SubsortDecl):
            builder.subsorts(item)
        elif isinstance(item, CombinedDecl):
            builder.subsorts(item)
            builder.intro(item, item.super)
        elif isinstance(item, IntroDecl):
            builder.intro(item, item.sort)
        elif isinstance(item, FinDomDecl):
            builder.domain(item)
            domain_items[item.name] = item
        elif isinstance(item, ExtensionalDecl):
            extensional.append(item)
        elif isinstance(item, TemplateDef):
            builder.sig.templates.setdefault(item.head.key, []).append(item)

    builder.link()
    builder.check_namespaces(domain_items)
    builder.check_restrictions()
    for item in extensional:
        builder.extensional(item)

    sig = builder.sig
    logger.info(f"Signature: {len(sig.sorts)} sorts, {len(sig.features)} features, "
                f"{len(sig.domains)} finite domains, {len(sig.templates)} templates")
    return sig
