"""Text output of decoded terms."""

from typing import List

from ..syntax.ast import Conj, FeatVal, PlainStruct, SourceTerm
from ..syntax.printer import print_term, quote_atom


def _conjuncts(term: SourceTerm) -> List[SourceTerm]:
    items = []
    while isinstance(term, Conj):
        items.append(term.left)
        term = term.right
    items.append(term)
    return items


def render(term: SourceTerm, style: str = "plain", indent: int = 2) -> str:
    """Single-line text, or one feature per line when `style` is "pretty"."""
    if style == "plain":
        return print_term(term, 999)
    if style != "pretty":
        raise ValueError(f"unknown render style: {style}")
    return _pretty(term, 0, indent)


def _pretty(term: SourceTerm, level: int, indent: int) -> str:
    pad = " " * (indent * level)
    items = _conjuncts(term)
    return (" &\n" + pad).join(_pretty_item(item, level, indent) for item in items)


def _pretty_item(term: SourceTerm, level: int, indent: int) -> str:
    if isinstance(term, FeatVal):
        value = term.value
        name = quote_atom(term.feature)
        if isinstance(value, Conj):
            pad = " " * (indent * level)
            inner_pad = " " * (indent * (level + 1))
            return f"{name}!(\n{inner_pad}{_pretty(value, level + 1, indent)}\n{pad})"
        if isinstance(value, FeatVal):
            return f"{name}!{_pretty_item(value, level, indent)}"
        if isinstance(value, PlainStruct):
            return f"{name}!{_pretty_item(value, level, indent)}"
        return print_term(term, 729)
    if isinstance(term, PlainStruct) and term.functor != "." and term.args:
        args = [_pretty(a, level + 1, indent) for a in term.args]
        if not any("\n" in a for a in args):
            return print_term(term, 729)
        return f"{quote_atom(term.functor)}({', '.join(args)})"
    return print_term(term, 729)
