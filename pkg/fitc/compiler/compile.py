"""Translation of feature terms and clauses into plain terms."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..config import CompileOptions
from ..decls.findom import domain_of, element_subset
from ..decls.signature import TOP, Signature
from ..engine.store import BindingStore, resolve
from ..engine.terms import Atom, Compound, EQUALS, Num, Term, Var, indicator, make
from ..errors import (
    FitError, FitSyntaxError, InconsistencyError, SearchError, SignatureError, TemplateError,
)
from ..syntax.ast import (
    ANONYMOUS, ClauseItem, Conj, Constrained, Disj, DoubleQuote, FeatVal, FinDom,
    PlainConst, PlainStruct, PlainVar, Quote, Search, SortRef, SourceTerm, TemplateCall,
    head_indicator,
)
from ..syntax.parser import TOO_DEEP
from ..syntax.printer import print_term
from .layout import LayoutTable, encode_subset, feature_path, full_domain, skeleton, slot_value
from .search import resolve_search
from .templates import distribute, expand_templates

logger = logging.getLogger(__name__)

CLAUSE_FUNCTOR = "$clause"
QUERY_FUNCTOR = "$query"


@dataclass(frozen=True)
class CoreClause:
    head: Term
    body: Tuple[Term, ...] = ()

    @property
    def key(self) -> Tuple[str, int]:
        return indicator(self.head)


@dataclass
class Compiled:
    """One alternative of a compiled description, live in its store."""
    term: Term
    bindings: Dict[str, Var]
    store: BindingStore

    def resolved(self) -> Tuple[Term, List[Tuple[Var, Term]]]:
        return resolve(self.term, self.store)


@dataclass
class CompiledQuery:
    goals: List[Term]
    variables: Dict[str, Var]
    store: BindingStore


class KnowledgeBase:
    """Compiled clauses in source order, indexed by predicate."""

    def __init__(self, signature: Signature, layouts: LayoutTable,
                 clauses: Optional[Iterable[CoreClause]] = None,
                 sources: Optional[List[str]] = None, fingerprint: str = "",
                 options: Optional[CompileOptions] = None):
        self.signature = signature
        self.layouts = layouts
        self.sources = list(sources or [])
        self.fingerprint = fingerprint
        self.options = options
        self.clauses: List[CoreClause] = []
        self.index: Dict[Tuple[str, int], List[CoreClause]] = {}
        for clause in clauses or ():
            self.add(clause)

    def add(self, clause: CoreClause) -> None:
        self.clauses.append(clause)
        self.index.setdefault(clause.key, []).append(clause)

    def clauses_for(self, name: str, arity: int) -> List[CoreClause]:
        return self.index.get((name, arity), [])

    def defines(self, name: str, arity: int) -> bool:
        return (name, arity) in self.index

    def predicates(self) -> List[Tuple[str, int]]:
        return list(self.index)

    def __len__(self) -> int:
        return len(self.clauses)


class _Clash(Exception):
    """Compile-time unification failed."""


class TermCompiler:
    """Compiles disjunction-free, template-free terms into one store."""

    def __init__(self, sig: Signature, table: LayoutTable,
                 options: Optional[CompileOptions] = None):
        self.sig = sig
        self.table = table
        self.options = options or CompileOptions()
        self.store = BindingStore()
        self.env: Dict[str, Var] = {}

    def unify(self, left: Term, right: Term, what: str) -> None:
        if not self.store.unify(left, right):
            raise _Clash(what)

    def skeleton(self, sort: str) -> Term:
        if sort != TOP and sort not in self.sig.sorts:
            raise SignatureError(f"unknown sort '{sort}'")
        return skeleton(self.table, self.sig, sort, fill_domains=self.options.sort_check)

    def build(self, term: SourceTerm, expected: Optional[str] = None,
              context: Optional[str] = None) -> Term:
        if isinstance(term, PlainVar):
            if term.name == ANONYMOUS:
                return Var("_")
            var = self.env.get(term.name)
            if var is None:
                var = self.env[term.name] = Var(term.name)
            return var
        if isinstance(term, PlainConst):
            if isinstance(term.value, str):
                return Atom(term.value)
            return Num(term.value)
        if isinstance(term, PlainStruct):
            return self.plain_struct(term)
        if isinstance(term, SortRef):
            return self.skeleton(term.sort)
        if isinstance(term, FeatVal):
            return self.feature_value(term, context)
        if isinstance(term, Conj):
            return self.conjunction(term, expected, context)
        if isinstance(term, Search):
            return self.search(term, expected, context)
        if isinstance(term, FinDom):
            domain = domain_of(self.sig, term.expr, expected)
            subset = element_subset(self.sig, domain, term.expr)
            return encode_subset(self.table, domain, subset)
        if isinstance(term, (Quote, DoubleQuote)):
            return self.build(term.inner)
        if isinstance(term, Constrained):
            value = self.build(term.term, expected, context)
            for left, right in term.pairs:
                self.unify(self.build(left), self.build(right),
                           f"{print_term(left)} does not match {print_term(right)}")
            return value
        if isinstance(term, TemplateCall):
            raise TemplateError(f"template @{term.key} was not expanded")
        if isinstance(term, Disj):
            raise TypeError("disjunctions must be distributed before compiling")
        raise TypeError(f"not a source term: {term!r}")

    def plain_struct(self, term: PlainStruct) -> Term:
        """Plain structures are built along their last argument in a loop, so long lists are fine."""
        spine: List[Tuple[str, List[Term]]] = []
        while isinstance(term, PlainStruct) and term.args:
            spine.append((term.functor, [self.build(a) for a in term.args[:-1]]))
            term = term.args[-1]
        result = make(term.functor, ()) if isinstance(term, PlainStruct) else self.build(term)
        for functor, init in reversed(spine):
            result = make(functor, init + [result])
        return result

    def feature_value(self, term: FeatVal, context: Optional[str]) -> Term:
        info = self.sig.feature(term.feature)
        host = self.skeleton(info.introducer)
        restriction = info.restriction
        inner_context = restriction if restriction in self.sig.sorts else None
        value = self.build(term.value, restriction, inner_context)
        if self.options.sort_check and restriction != TOP:
            if restriction in self.table.domain_layouts:
                bound = full_domain(self.table, restriction)
            else:
                bound = self.skeleton(restriction)
            self.unify(value, bound, f"value of '{term.feature}' is not of sort '{restriction}'")
        slot = slot_value(host, feature_path(self.sig, self.table, term.feature), self.store)
        self.unify(slot, value, f"value of '{term.feature}' is not a '{restriction}'")
        return host

    def conjunction(self, term: Conj, expected: Optional[str], context: Optional[str]) -> Term:
        conjuncts: List[SourceTerm] = []
        stack = [term]
        while stack:
            t = stack.pop()
            if isinstance(t, Conj):
                stack.extend((t.right, t.left))
            else:
                conjuncts.append(t)
        if context is None or context == TOP:
            context = next((c.sort for c in conjuncts if isinstance(c, SortRef)), None)
        result = self.build(conjuncts[0], expected, context)
        for conjunct in conjuncts[1:]:
            value = self.build(conjunct, expected, context)
            self.unify(result, value,
                       f"{print_term(conjunct, 729)} is inconsistent with the rest of "
                       f"{print_term(term)}")
        return result

    def search(self, term: Search, expected: Optional[str], context: Optional[str]) -> Term:
        if not self.options.feature_search:
            raise SearchError(f"feature search is disabled: >>>{term.feature}")
        if term.start is not None:
            if term.start not in self.sig.sorts:
                raise SearchError(f"unknown sort '{term.start}' in feature search")
            rewritten = Conj(SortRef(term.start), Search(None, term.feature, term.value))
            return self.build(rewritten, expected, term.start)
        if context is None or context == TOP:
            raise SearchError(f"no sort to start the search for '{term.feature}' from")
        path = resolve_search(self.sig, context, term.feature)
        chain: SourceTerm = term.value
        for feature in reversed(path):
            chain = FeatVal(feature, chain)
        logger.debug(f"Search {context}>>>{term.feature} resolved to {'!'.join(path)}")
        return self.build(chain, expected, context)


def _variants(term: SourceTerm, sig: Signature) -> List[SourceTerm]:
    variants = []
    for expanded in expand_templates(term, sig):
        variants.extend(distribute(expanded))
    return variants


def compile_term(term: SourceTerm, sig: Signature, table: LayoutTable,
                 expected: Optional[str] = None,
                 options: Optional[CompileOptions] = None) -> List[Compiled]:
    """All consistent alternatives of a description, in left-to-right order."""
    variants = _variants(term, sig)
    results = []
    clashes = []
    for variant in variants:
        compiler = TermCompiler(sig, table, options)
        try:
            value = compiler.build(variant, expected, None)
        except _Clash as clash:
            clashes.append(str(clash))
            continue
        results.append(Compiled(value, compiler.env, compiler.store))
    if not results:
        raise InconsistencyError(_inconsistency(variants, clashes))
    return results


def _inconsistency(variants: List[SourceTerm], clashes: List[str]) -> str:
    if len(variants) == 1:
        return f"inconsistent description: {clashes[0]}"
    return f"none of the {len(variants)} alternatives is consistent (first: {clashes[0]})"


def compile_clause(item: ClauseItem, sig: Signature, table: LayoutTable,
                   options: Optional[CompileOptions] = None) -> List[CoreClause]:
    """One plain clause per consistent alternative of a source clause."""
    if head_indicator(item.head) is None:
        raise FitSyntaxError("clause head must be an atom or a compound term", item.file, item.line)
    wrapped = PlainStruct(CLAUSE_FUNCTOR, (item.head,) + tuple(item.body))
    try:
        resolved = [a.resolved() for a in compile_term(wrapped, sig, table, None, options)]
    except FitError as exc:
        raise exc.located(item.file, item.line)
    except RecursionError:
        raise FitSyntaxError(TOO_DEEP, item.file, item.line) from None
    clauses = []
    for term, equations in resolved:
        head, *goals = term.args
        cycles = [make(EQUALS, (var, value)) for var, value in equations]
        clauses.append(CoreClause(head, tuple(cycles + goals)))
    logger.debug(f"{item.file or '<input>'}:{item.line}: {len(clauses)} clause(s)")
    return clauses


def compile_program(items: Iterable, sig: Signature, table: LayoutTable,
                    options: Optional[CompileOptions] = None,
                    sources: Optional[List[str]] = None) -> KnowledgeBase:
    options = options or CompileOptions()
    kb = KnowledgeBase(sig, table, sources=sources, fingerprint=options.fingerprint(),
                       options=options)
    count = 0
    for item in items:
        if not isinstance(item, ClauseItem):
            continue
        count += 1
        for clause in compile_clause(item, sig, table, options):
            kb.add(clause)
    logger.info(f"Compiled {count} source clauses into {len(kb)} clauses")
    return kb


def compile_query(goals: List[SourceTerm], sig: Signature, table: LayoutTable,
                  options: Optional[CompileOptions] = None) -> List[CompiledQuery]:
    """Compile query goals; a disjunctive query gives several alternatives."""
    wrapped = PlainStruct(QUERY_FUNCTOR, tuple(goals))
    try:
        alternatives = compile_term(wrapped, sig, table, None, options)
    except RecursionError:
        raise FitSyntaxError(TOO_DEEP, "<query>") from None
    queries = []
    for alternative in alternatives:
        term = alternative.store.deref(alternative.term)
        query_goals = list(term.args) if isinstance(term, Compound) else []
        queries.append(CompiledQuery(query_goals, alternative.bindings, alternative.store))
    return queries
