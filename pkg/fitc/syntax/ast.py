"""Abstract syntax of sorted feature programs."""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


# -- finite domain expressions ------------------------------------------

@dataclass(frozen=True)
class FDAtom:
    value: Union[str, int]


@dataclass(frozen=True)
class FDAnnot:
    inner: "FinDomExpr"
    domain: str


@dataclass(frozen=True)
class FDNeg:
    inner: "FinDomExpr"


@dataclass(frozen=True)
class FDAnd:
    left: "FinDomExpr"
    right: "FinDomExpr"


@dataclass(frozen=True)
class FDOr:
    left: "FinDomExpr"
    right: "FinDomExpr"


@dataclass(frozen=True)
class FDWhole:
    """Every element of the domain; only meaningful under an annotation."""


FinDomExpr = Union[FDAtom, FDAnnot, FDNeg, FDAnd, FDOr, FDWhole]


# -- terms --------------------------------------------------------------

@dataclass(frozen=True)
class SortRef:
    sort: str


@dataclass(frozen=True)
class FeatVal:
    feature: str
    value: "SourceTerm"


@dataclass(frozen=True)
class Conj:
    left: "SourceTerm"
    right: "SourceTerm"


@dataclass(frozen=True)
class Disj:
    left: "SourceTerm"
    right: "SourceTerm"


@dataclass(frozen=True)
class TemplateCall:
    name: str
    args: Tuple["SourceTerm", ...] = ()

    @property
    def key(self) -> str:
        return f"{self.name}/{len(self.args)}"


@dataclass(frozen=True)
class Quote:
    inner: "SourceTerm"


@dataclass(frozen=True)
class DoubleQuote:
    inner: "SourceTerm"


@dataclass(frozen=True)
class Search:
    start: Optional[str]
    feature: str
    value: "SourceTerm"


@dataclass(frozen=True)
class FinDom:
    expr: FinDomExpr


@dataclass(frozen=True)
class PlainVar:
    name: str


@dataclass(frozen=True)
class PlainConst:
    """An atom (str) or a number."""
    value: Union[str, int, float]


@dataclass(frozen=True)
class PlainStruct:
    functor: str
    args: Tuple["SourceTerm", ...]


@dataclass(frozen=True)
class Constrained:
    """A term that must also unify with each side of every pair.

    Produced by template expansion when a call argument meets a definition
    argument that is a description rather than a plain term.
    """
    term: "SourceTerm"
    pairs: Tuple[Tuple["SourceTerm", "SourceTerm"], ...]


Plain = Union[PlainVar, PlainConst, PlainStruct]

SourceTerm = Union[SortRef, FeatVal, Conj, Disj, TemplateCall, Quote, DoubleQuote,
                   Search, FinDom, PlainVar, PlainConst, PlainStruct, Constrained]

ANONYMOUS = "_"


def plain_atom(term: "SourceTerm") -> Optional[str]:
    if isinstance(term, PlainConst) and isinstance(term.value, str):
        return term.value
    return None


def head_indicator(term: "SourceTerm") -> Optional[Tuple[str, int]]:
    if isinstance(term, PlainStruct):
        return term.functor, len(term.args)
    name = plain_atom(term)
    return (name, 0) if name is not None else None


# -- program items -----------------------------------------------------

@dataclass(frozen=True)
class Item:
    file: Optional[str] = field(default=None, compare=False, kw_only=True)
    line: Optional[int] = field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class SubsortDecl(Item):
    super: str
    dimensions: Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class IntroDecl(Item):
    sort: str
    features: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class CombinedDecl(Item):
    super: str
    dimensions: Tuple[Tuple[str, ...], ...]
    features: Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class FinDomDecl(Item):
    name: str
    dimensions: Tuple[Tuple[Union[str, int], ...], ...]


@dataclass(frozen=True)
class TemplateDef(Item):
    head: TemplateCall
    body: "SourceTerm"


@dataclass(frozen=True)
class ExtensionalDecl(Item):
    sorts: Tuple[str, ...]


@dataclass(frozen=True)
class ClauseItem(Item):
    head: "SourceTerm"
    body: Tuple["SourceTerm", ...] = ()


DeclItem = Union[SubsortDecl, IntroDecl, CombinedDecl, FinDomDecl, TemplateDef, ExtensionalDecl]
ProgramItem = Union[DeclItem, ClauseItem]


@dataclass(frozen=True)
class Elided:
    """Part of an answer left out when cyclic terms are not printed."""
