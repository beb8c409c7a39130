"""Printing of feature-term syntax and plain terms.

Output is minimally parenthesized under the reader's operator table and
reads back to the same tree.
"""

import re
from typing import Callable, Dict, List, Optional, Tuple

from ..engine.terms import Atom, Compound, LIST_FUNCTOR, Num, Term, Var
from .ast import (
    Conj, Constrained, Disj, DoubleQuote, Elided, FDAnd, FDAnnot, FDAtom, FDNeg, FDOr, FDWhole,
    FeatVal, FinDom, FinDomExpr, PlainConst, PlainStruct, PlainVar, Quote, Search,
    SortRef, SourceTerm, TemplateCall,
)

_BARE_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_WORD_OPERATORS = {"or", "intro", "fin_dom", "extensional"}
_ARG = 999


def quote_atom(name: str) -> str:
    if name == "[]" or (_BARE_ATOM.match(name) and name not in _WORD_OPERATORS):
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'").replace("\n", "\\n")
    return f"'{escaped}'"


def format_number(value) -> str:
    text = repr(value)
    if isinstance(value, float) and "." not in text and "e" in text:
        mantissa, exponent = text.split("e")
        text = f"{mantissa}.0e{exponent}"
    return text


def _wrap(text: str, prec: int, limit: int) -> str:
    return f"({text})" if prec > limit else text


# -- feature-term syntax ------------------------------------------------

def print_term(term: SourceTerm, max_prec: int = 1200) -> str:
    text, prec = _source(term)
    return _wrap(text, prec, max_prec)


def _source(term: SourceTerm) -> Tuple[str, int]:
    if isinstance(term, PlainVar):
        return term.name, 0
    if isinstance(term, PlainConst):
        if isinstance(term.value, str):
            return quote_atom(term.value), 0
        return format_number(term.value), 0
    if isinstance(term, PlainStruct):
        return _struct(term), 0
    if isinstance(term, SortRef):
        return "<" + quote_atom(term.sort), 550
    if isinstance(term, FeatVal):
        return f"{quote_atom(term.feature)}!{_feature_value(term.value)}", 650
    if isinstance(term, Conj):
        return f"{print_term(term.left, 729)} & {print_term(term.right, 730)}", 730
    if isinstance(term, Disj):
        return f"{print_term(term.left, 739)} or {print_term(term.right, 740)}", 740
    if isinstance(term, TemplateCall):
        if term.args:
            args = ", ".join(print_term(a, _ARG) for a in term.args)
            return f"@{quote_atom(term.name)}({args})", 550
        return "@" + quote_atom(term.name), 550
    if isinstance(term, Quote):
        return "`" + print_term(term.inner, 550), 550
    if isinstance(term, DoubleQuote):
        return "``" + print_term(term.inner, 550), 550
    if isinstance(term, Search):
        target = f"{quote_atom(term.feature)}!{print_term(term.value, 650)}"
        if term.start is None:
            return ">>>" + target, 700
        return f"{quote_atom(term.start)}>>>{target}", 700
    if isinstance(term, FinDom):
        return _findom(term.expr)
    if isinstance(term, Elided):
        return "...", 0
    if isinstance(term, Constrained):
        text = print_term(term.term, 729)
        for left, right in term.pairs:
            text += f" & {print_term(left, 729)} & {print_term(right, 729)}"
        return text, 730
    raise TypeError(f"not a source term: {term!r}")


def _feature_value(value: SourceTerm) -> str:
    # a prefix search reads at the capped priority right of `!`
    if isinstance(value, Search) and value.start is None:
        return _source(value)[0]
    return print_term(value, 650)


def _struct(term: PlainStruct) -> str:
    if term.functor == LIST_FUNCTOR and len(term.args) == 2:
        items: List[str] = []
        tail: SourceTerm = term
        while isinstance(tail, PlainStruct) and tail.functor == LIST_FUNCTOR and len(tail.args) == 2:
            items.append(print_term(tail.args[0], _ARG))
            tail = tail.args[1]
        if isinstance(tail, PlainConst) and tail.value == "[]":
            return "[" + ", ".join(items) + "]"
        return "[" + ", ".join(items) + "|" + print_term(tail, _ARG) + "]"
    if term.functor == "=" and len(term.args) == 2:
        return f"{print_term(term.args[0], 759)} = {print_term(term.args[1], 759)}"
    args = ", ".join(print_term(a, _ARG) for a in term.args)
    return f"{quote_atom(term.functor)}({args})"


def _findom(expr: FinDomExpr) -> Tuple[str, int]:
    if isinstance(expr, FDAtom):
        if isinstance(expr.value, str):
            return quote_atom(expr.value), 0
        return str(expr.value), 0
    if isinstance(expr, FDWhole):
        return "_", 0
    if isinstance(expr, FDAnnot):
        inner, prec = _findom(expr.inner)
        return f"{_wrap(inner, prec, 149)}@{quote_atom(expr.domain)}", 150
    if isinstance(expr, FDNeg):
        inner, prec = _findom(expr.inner)
        return "~" + _wrap(inner, prec, 600), 600
    if isinstance(expr, FDAnd):
        left, lp = _findom(expr.left)
        right, rp = _findom(expr.right)
        return f"{_wrap(left, lp, 729)}&{_wrap(right, rp, 730)}", 730
    if isinstance(expr, FDOr):
        left, lp = _findom(expr.left)
        right, rp = _findom(expr.right)
        return f"{_wrap(left, lp, 739)} or {_wrap(right, rp, 740)}", 740
    raise TypeError(f"not a finite domain expression: {expr!r}")


# -- plain terms --------------------------------------------------------

VarNamer = Callable[[Var], str]


def write_term(term: Term, name_of: Optional[VarNamer] = None) -> str:
    """Canonical text of a plain term; lists in bracket notation."""
    name_of = name_of or repr
    if isinstance(term, Var):
        return name_of(term)
    if isinstance(term, Atom):
        return quote_atom(term.name)
    if isinstance(term, Num):
        return format_number(term.value)
    if term.functor == LIST_FUNCTOR and len(term.args) == 2:
        items = []
        tail: Term = term
        while isinstance(tail, Compound) and tail.functor == LIST_FUNCTOR and len(tail.args) == 2:
            items.append(write_term(tail.args[0], name_of))
            tail = tail.args[1]
        text = "[" + ", ".join(items)
        if tail != Atom("[]"):
            text += "|" + write_term(tail, name_of)
        return text + "]"
    args = ", ".join(write_term(a, name_of) for a in term.args)
    return f"{quote_atom(term.functor)}({args})"


def write_goal(term: Term, name_of: Optional[VarNamer] = None) -> str:
    """Like write_term, with `=` written infix."""
    if isinstance(term, Compound) and term.functor == "=" and len(term.args) == 2:
        left, right = term.args
        return f"{write_term(left, name_of)} = {write_term(right, name_of)}"
    return write_term(term, name_of)


def variable_namer(taken: Optional[set] = None) -> Callable[[Var], str]:
    """Names variables A, B, ... Z, A1, ... in first-call order."""
    names: Dict[Var, str] = {}
    taken = set(taken or ())
    counter = [0]

    def name_of(var: Var) -> str:
        name = names.get(var)
        if name is None:
            while True:
                name = tag_name(counter[0])
                counter[0] += 1
                if name not in taken:
                    break
            names[var] = name
        return name

    return name_of


def tag_name(index: int) -> str:
    letter = chr(ord("A") + index % 26)
    return letter if index < 26 else f"{letter}{index // 26}"
