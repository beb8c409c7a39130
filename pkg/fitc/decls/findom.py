"""Finite domain value sets."""

from typing import FrozenSet, List, Optional, Set, Tuple

from ..errors import SignatureError
from ..syntax.ast import FDAnd, FDAnnot, FDAtom, FDNeg, FDOr, FDWhole, FinDomExpr
from .signature import DomainAtom, Signature

Element = Tuple[DomainAtom, ...]


def _atoms(expr: FinDomExpr, out: List[DomainAtom]) -> None:
    if isinstance(expr, FDAtom):
        out.append(expr.value)
    elif isinstance(expr, FDAnnot):
        _atoms(expr.inner, out)
    elif isinstance(expr, FDNeg):
        _atoms(expr.inner, out)
    elif isinstance(expr, (FDAnd, FDOr)):
        _atoms(expr.left, out)
        _atoms(expr.right, out)


def _annotations(expr: FinDomExpr, out: Set[str]) -> None:
    if isinstance(expr, FDAnnot):
        out.add(expr.domain)
        _annotations(expr.inner, out)
    elif isinstance(expr, FDNeg):
        _annotations(expr.inner, out)
    elif isinstance(expr, (FDAnd, FDOr)):
        _annotations(expr.left, out)
        _annotations(expr.right, out)


def domains_containing(sig: Signature, atom: DomainAtom) -> List[str]:
    return [name for name, info in sig.domains.items()
            if any(atom in dim for dim in info.dimensions)]


def domain_of(sig: Signature, expr: FinDomExpr, context: Optional[str] = None) -> str:
    """The finite domain an expression ranges over.

    An annotation decides; otherwise any non-integer atom that belongs to a
    single domain does; otherwise the context, if it names a domain.
    Integers never decide on their own.
    """
    annotated: Set[str] = set()
    _annotations(expr, annotated)
    if len(annotated) > 1:
        raise SignatureError(f"conflicting domain annotations: {', '.join(sorted(annotated))}")
    if annotated:
        name = annotated.pop()
        if name not in sig.domains:
            raise SignatureError(f"unknown finite domain '{name}'")
        return name

    atoms: List[DomainAtom] = []
    _atoms(expr, atoms)
    decided: Set[str] = set()
    for atom in atoms:
        if isinstance(atom, int):
            continue
        found = domains_containing(sig, atom)
        if not found:
            raise SignatureError(f"'{atom}' is not an element of any finite domain")
        if len(found) == 1:
            decided.add(found[0])
    if len(decided) > 1:
        raise SignatureError(f"atoms from different finite domains: {', '.join(sorted(decided))}")
    if decided:
        return decided.pop()
    if context is not None and context in sig.domains:
        return context
    shown = ", ".join(str(a) for a in atoms)
    raise SignatureError(f"cannot tell which finite domain '{shown}' belongs to; add @Domain")


def _indices(sig: Signature, domain: str, expr: FinDomExpr) -> FrozenSet[int]:
    info = sig.domains[domain]
    everything = frozenset(range(len(info.elements)))
    if isinstance(expr, FDWhole):
        return everything
    if isinstance(expr, FDAtom):
        if not any(expr.value in dim for dim in info.dimensions):
            raise SignatureError(f"'{expr.value}' is not an element of finite domain '{domain}'")
        return frozenset(i for i, element in enumerate(info.elements) if expr.value in element)
    if isinstance(expr, FDAnnot):
        if expr.domain != domain:
            raise SignatureError(f"value annotated with '{expr.domain}' used as '{domain}'")
        return _indices(sig, domain, expr.inner)
    if isinstance(expr, FDNeg):
        return everything - _indices(sig, domain, expr.inner)
    if isinstance(expr, FDAnd):
        return _indices(sig, domain, expr.left) & _indices(sig, domain, expr.right)
    if isinstance(expr, FDOr):
        return _indices(sig, domain, expr.left) | _indices(sig, domain, expr.right)
    raise TypeError(f"not a finite domain expression: {expr!r}")


def element_subset(sig: Signature, domain: str, expr: FinDomExpr) -> List[Element]:
    """Elements denoted by `expr`, in domain order."""
    if domain not in sig.domains:
        raise SignatureError(f"unknown finite domain '{domain}'")
    info = sig.domains[domain]
    return [info.elements[i] for i in sorted(_indices(sig, domain, expr))]
