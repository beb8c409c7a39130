"""Turn read terms into program items and feature-term syntax trees."""

from typing import List, Optional, Tuple, Union

from ..engine.terms import Atom, Compound, LIST_FUNCTOR, Num, Term, Var
from ..errors import FitSyntaxError
from .ast import (
    ANONYMOUS, ClauseItem, CombinedDecl, Conj, Disj, DoubleQuote, ExtensionalDecl,
    FDAnd, FDAnnot, FDAtom, FDNeg, FDOr, FDWhole, FeatVal, FinDom, FinDomDecl,
    FinDomExpr, IntroDecl, PlainConst, PlainStruct, PlainVar, ProgramItem, Quote,
    Search, SortRef, SourceTerm, SubsortDecl, TemplateCall, TemplateDef,
)
from .reader import Reader, ReadTerm

TOO_DEEP = "term is nested too deeply"

_FINDOM_CONNECTIVES = {("&", 2), ("or", 2), ("~", 1), ("@", 2)}
_DESCRIPTION_FUNCTORS = {
    ("<", 1), ("!", 2), ("&", 2), ("or", 2), ("~", 1), ("@", 1), ("@", 2),
    ("`", 1), ("``", 1), (">>>", 1), (">>>", 2),
}


class Converter:
    """Converts the plain terms of one clause, keeping its location for errors."""

    def __init__(self, filename: Optional[str] = None, line: Optional[int] = None):
        self.filename = filename
        self.line = line

    def error(self, message: str) -> FitSyntaxError:
        return FitSyntaxError(message, self.filename, self.line)

    # -- items ------------------------------------------------------------

    def item(self, term: Term) -> ProgramItem:
        where = {"file": self.filename, "line": self.line}
        if isinstance(term, Compound):
            functor, args = term.functor, term.args
            if functor == ":-" and len(args) == 2:
                return ClauseItem(self.head(args[0]), tuple(self.goals(args[1])), **where)
            if functor == ":-" and len(args) == 1:
                raise self.error("directives are not supported")
            if functor == "?-" and len(args) == 1:
                raise self.error("a query cannot appear in a program")
            if functor == ":=" and len(args) == 2:
                return TemplateDef(self.template_head(args[0]), self.term(args[1]), **where)
            if functor == ">" and len(args) == 2:
                return SubsortDecl(self.symbol(args[0], "sort"), self.dimensions(args[1]), **where)
            if functor == "intro" and len(args) == 2:
                return self.intro(args[0], args[1], where)
            if functor == "fin_dom" and len(args) == 2:
                name = self.symbol(args[0], "domain name")
                return FinDomDecl(name, self.dimensions(args[1], allow_numbers=True), **where)
            if functor == "extensional" and len(args) == 1:
                sorts = self.list_items(args[0], "extensional declaration")
                return ExtensionalDecl(tuple(self.symbol(s, "sort") for s in sorts), **where)
        return ClauseItem(self.head(term), (), **where)

    def head(self, term: Term) -> SourceTerm:
        if isinstance(term, Var):
            raise self.error("clause head is a variable")
        if isinstance(term, Num):
            raise self.error("clause head is a number")
        if isinstance(term, Compound) and (term.functor, term.arity) in _DESCRIPTION_FUNCTORS:
            raise self.error(f"clause head must be a predicate, not '{term.functor}' term")
        return self.term(term)

    def goals(self, body: Term) -> List[SourceTerm]:
        goals = []
        while isinstance(body, Compound) and body.functor == "," and body.arity == 2:
            goals.append(self.goal(body.args[0]))
            body = body.args[1]
        goals.append(self.goal(body))
        return goals

    def goal(self, term: Term) -> SourceTerm:
        if isinstance(term, Num):
            raise self.error("a number is not a goal")
        return self.term(term)

    def template_head(self, term: Term) -> TemplateCall:
        if isinstance(term, Compound) and term.functor == "@" and term.arity == 1:
            term = term.args[0]
        if isinstance(term, Atom):
            self.check_name(term.name)
            return TemplateCall(term.name, ())
        if isinstance(term, Compound) and (term.functor, term.arity) not in _DESCRIPTION_FUNCTORS:
            self.check_name(term.functor)
            return TemplateCall(term.functor, tuple(self.term(a) for a in term.args))
        raise self.error("template name must be an atom or a compound term")

    def intro(self, left: Term, right: Term, where) -> ProgramItem:
        features = tuple(self.feature_decl(f) for f in self.list_items(right, "intro list"))
        if isinstance(left, Compound) and left.functor == ">" and left.arity == 2:
            sup = self.symbol(left.args[0], "sort")
            return CombinedDecl(sup, self.dimensions(left.args[1]), features, **where)
        return IntroDecl(self.symbol(left, "sort"), features, **where)

    def feature_decl(self, term: Term) -> Tuple[str, str]:
        if isinstance(term, Compound) and term.functor == ":" and term.arity == 2:
            return self.symbol(term.args[0], "feature"), self.symbol(term.args[1], "restriction")
        return self.symbol(term, "feature"), "top"

    def dimensions(self, term: Term, allow_numbers: bool = False) -> Tuple[Tuple[Union[str, int], ...], ...]:
        dims = []
        while isinstance(term, Compound) and term.functor == "*" and term.arity == 2:
            dims.append(term.args[1])
            term = term.args[0]
        dims.append(term)
        result = []
        for dim in reversed(dims):
            members = self.list_items(dim, "dimension")
            if not members:
                raise self.error("empty dimension list")
            if allow_numbers:
                result.append(tuple(self.domain_atom(m) for m in members))
            else:
                result.append(tuple(self.symbol(m, "sort") for m in members))
        return tuple(result)

    def list_items(self, term: Term, what: str) -> List[Term]:
        items = []
        while isinstance(term, Compound) and term.functor == LIST_FUNCTOR and term.arity == 2:
            items.append(term.args[0])
            term = term.args[1]
        if term != Atom("[]"):
            raise self.error(f"{what} must be a proper list")
        return items

    def symbol(self, term: Term, what: str) -> str:
        if not isinstance(term, Atom):
            raise self.error(f"{what} must be an atom, found {term!r}")
        self.check_name(term.name)
        return term.name

    def domain_atom(self, term: Term) -> Union[str, int]:
        if isinstance(term, Num) and isinstance(term.value, int):
            return term.value
        return self.symbol(term, "domain element")

    def check_name(self, name: str) -> None:
        if name.startswith("$"):
            raise self.error(f"names starting with '$' are reserved: {name}")

    # -- terms ------------------------------------------------------------

    def term(self, t: Term) -> SourceTerm:
        if isinstance(t, Var):
            return PlainVar(t.name or ANONYMOUS)
        if isinstance(t, Num):
            return PlainConst(t.value)
        if isinstance(t, Atom):
            self.check_name(t.name)
            return PlainConst(t.name)

        if _is_list_cell(t):
            items, tail = _list_spine(t)
            return _plain_list([self.term(i) for i in items], self.term(tail))
        functor, args = t.functor, t.args
        key = (functor, len(args))
        if key in _FINDOM_CONNECTIVES:
            findom = self.findom(t)
            if findom is not None:
                return findom
        if key == ("<", 1):
            return SortRef(self.symbol(args[0], "sort"))
        if key == ("!", 2):
            return FeatVal(self.symbol(args[0], "feature"), self.term(args[1]))
        if key == ("&", 2):
            return self.conjunction(t)
        if key == ("or", 2):
            return Disj(self.term(args[0]), self.term(args[1]))
        if key == ("~", 1):
            raise self.error("negation applies only to finite domain values")
        if key == ("@", 1):
            call = args[0]
            if isinstance(call, Atom):
                self.check_name(call.name)
                return TemplateCall(call.name, ())
            if isinstance(call, Compound):
                self.check_name(call.functor)
                return TemplateCall(call.functor, tuple(self.term(a) for a in call.args))
            raise self.error("template call needs a name")
        if key == ("@", 2):
            raise self.error("'@' annotation needs a finite domain value and a domain name")
        if key == ("`", 1):
            return Quote(self.plain(args[0]))
        if key == ("``", 1):
            return DoubleQuote(self.double_quoted(args[0]))
        if key == (">>>", 1):
            feature, value = self.search_target(args[0])
            return Search(None, feature, value)
        if key == (">>>", 2):
            start = self.symbol(args[0], "search start sort")
            feature, value = self.search_target(args[1])
            return Search(start, feature, value)
        self.check_name(functor)
        return PlainStruct(functor, tuple(self.term(a) for a in args))

    def conjunction(self, t: Compound) -> SourceTerm:
        """Conjuncts that read as finite domain values form one value, wherever they stand."""
        conjuncts = self.conjuncts(t)
        exprs = [self.findom_expr(c) for c in conjuncts]
        values = [e for e in exprs if e is not None]
        if len(values) == 1 and isinstance(values[0], FDAtom):
            values = []
        parts: List[SourceTerm] = []
        for conjunct, expr in zip(conjuncts, exprs):
            if expr is None or not values:
                parts.append(self.term(conjunct))
            elif expr is values[0]:
                value = values[-1]
                for other in reversed(values[:-1]):
                    value = FDAnd(other, value)
                parts.append(FinDom(value))
        result = parts[-1]
        for part in reversed(parts[:-1]):
            result = Conj(part, result)
        return result

    def conjuncts(self, t: Term) -> List[Term]:
        """Operands of a `&` tree, left to right; finite domain subtrees stay whole."""
        result: List[Term] = []
        stack = [t]
        while stack:
            t = stack.pop()
            if (isinstance(t, Compound) and t.functor == "&" and t.arity == 2
                    and self.findom_expr(t) is None):
                stack.extend((t.args[1], t.args[0]))
            else:
                result.append(t)
        return result

    def search_target(self, t: Term) -> Tuple[str, SourceTerm]:
        if isinstance(t, Compound) and t.functor == "!" and t.arity == 2:
            return self.symbol(t.args[0], "feature"), self.term(t.args[1])
        raise self.error("feature search must have the form >>>Feature!Value")

    def plain(self, t: Term) -> SourceTerm:
        """Plain reading of a term: no operator gets its description meaning."""
        if isinstance(t, Var):
            return PlainVar(t.name or ANONYMOUS)
        if isinstance(t, Num):
            return PlainConst(t.value)
        if isinstance(t, Atom):
            return PlainConst(t.name)
        if _is_list_cell(t):
            items, tail = _list_spine(t)
            return _plain_list([self.plain(i) for i in items], self.plain(tail))
        return PlainStruct(t.functor, tuple(self.plain(a) for a in t.args))

    def double_quoted(self, t: Term) -> SourceTerm:
        if isinstance(t, Compound):
            return PlainStruct(t.functor, tuple(self.term(a) for a in t.args))
        return self.plain(t)

    # -- finite domains ---------------------------------------------------

    def findom(self, t: Compound) -> Optional[SourceTerm]:
        """FinDom reading of a connective tree, or None if it is not one."""
        if t.functor == "@" and t.arity == 2 and isinstance(t.args[0], Var):
            domain = self.symbol(t.args[1], "domain name")
            whole = FinDom(FDAnnot(FDWhole(), domain))
            if t.args[0].name in (None, ANONYMOUS):
                return whole
            return Conj(PlainVar(t.args[0].name), whole)
        expr = self.findom_expr(t)
        return FinDom(expr) if expr is not None else None

    def findom_expr(self, t: Term) -> Optional[FinDomExpr]:
        if isinstance(t, Atom):
            if t.name.startswith("$") or t.name == "[]":
                return None
            return FDAtom(t.name)
        if isinstance(t, Num):
            return FDAtom(t.value) if isinstance(t.value, int) else None
        if not isinstance(t, Compound):
            return None
        key = (t.functor, t.arity)
        if key == ("@", 2):
            inner = self.findom_expr(t.args[0])
            if inner is None or not isinstance(t.args[1], Atom):
                return None
            return FDAnnot(inner, t.args[1].name)
        if key == ("~", 1):
            inner = self.findom_expr(t.args[0])
            return FDNeg(inner) if inner is not None else None
        if key in (("&", 2), ("or", 2)):
            left = self.findom_expr(t.args[0])
            right = self.findom_expr(t.args[1])
            if left is None or right is None:
                return None
            return FDAnd(left, right) if t.functor == "&" else FDOr(left, right)
        return None


def _is_list_cell(t: Term) -> bool:
    return isinstance(t, Compound) and t.functor == LIST_FUNCTOR and t.arity == 2


def _list_spine(t: Term) -> Tuple[List[Term], Term]:
    items = []
    while _is_list_cell(t):
        items.append(t.args[0])
        t = t.args[1]
    return items, t


def _plain_list(items: List[SourceTerm], tail: SourceTerm) -> SourceTerm:
    for item in reversed(items):
        tail = PlainStruct(LIST_FUNCTOR, (item, tail))
    return tail


def _items(read: List[ReadTerm], filename: Optional[str]) -> List[ProgramItem]:
    items = []
    for r in read:
        try:
            items.append(Converter(filename, r.line).item(r.term))
        except RecursionError:
            raise FitSyntaxError(TOO_DEEP, filename, r.line) from None
    return items


def parse_program(text: str, filename: Optional[str] = None) -> List[ProgramItem]:
    """Parse a whole program; items come back in source order."""
    try:
        read = Reader(text, filename).read_all()
    except RecursionError:
        raise FitSyntaxError(TOO_DEEP, filename) from None
    return _items(read, filename)


def parse_query(text: str) -> List[SourceTerm]:
    """Parse `?- Goal.` or `Goal.` into a flat list of goals."""
    stripped = text.strip()
    if not stripped or stripped in ("?-", "?-."):
        raise FitSyntaxError("empty query")
    if not stripped.endswith("."):
        stripped += "."
    try:
        read = Reader(stripped, "<query>").read_all()
    except RecursionError:
        raise FitSyntaxError(TOO_DEEP, "<query>") from None
    if not read:
        raise FitSyntaxError("empty query")
    if len(read) > 1:
        raise FitSyntaxError("a query must be a single clause", "<query>", read[1].line)
    term = read[0].term
    if isinstance(term, Compound) and term.functor == "?-" and term.arity == 1:
        term = term.args[0]
    try:
        return Converter("<query>", read[0].line).goals(term)
    except RecursionError:
        raise FitSyntaxError(TOO_DEEP, "<query>", read[0].line) from None


def parse_term(text: str) -> SourceTerm:
    """Parse a single description (used when reading printed answers back)."""
    stripped = text.strip()
    if not stripped.endswith("."):
        stripped += "."
    read = Reader(stripped, "<term>").read_all()
    if len(read) != 1:
        raise FitSyntaxError("expected exactly one term", "<term>")
    return Converter("<term>", read[0].line).term(read[0].term)
