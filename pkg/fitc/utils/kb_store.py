"""Saving and loading compiled knowledge bases."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError

from ..compiler.compile import CoreClause, KnowledgeBase
from ..compiler.layout import LayoutTable
from ..config import CompileOptions
from ..decls.signature import Signature
from ..engine.terms import Atom, Compound, LIST_FUNCTOR, Num, Term, Var
from ..errors import FitError, KnowledgeBaseError
from ..syntax.ast import TemplateDef
from ..syntax.parser import parse_program
from ..syntax.printer import print_term
from ..syntax.reader import Reader

logger = logging.getLogger(__name__)

KB_FORMAT = "fitc-kb"
KB_VERSION = 1


class ClauseRecord(BaseModel):
    head: Any
    body: List[Any] = Field(default_factory=list)


class KBDocument(BaseModel):
    """On-disk form of a knowledge base."""
    format: str = KB_FORMAT
    version: int = KB_VERSION
    fingerprint: str = ""
    options: Optional[CompileOptions] = None
    sources: List[str] = Field(default_factory=list)
    signature: Signature
    templates: List[str] = Field(default_factory=list)
    layouts: LayoutTable
    clauses: List[ClauseRecord] = Field(default_factory=list)


# -- terms as JSON ------------------------------------------------------

def encode_term(term: Term, numbering: Dict[Var, int]) -> list:
    if isinstance(term, Var):
        if term not in numbering:
            numbering[term] = len(numbering)
        return ["v", numbering[term]]
    if isinstance(term, Atom):
        return ["a", term.name]
    if isinstance(term, Num):
        return ["n", term.value]
    if term.functor == LIST_FUNCTOR and len(term.args) == 2:
        # lists are stored flat so long ones stay shallow in JSON
        items = []
        while isinstance(term, Compound) and term.functor == LIST_FUNCTOR and len(term.args) == 2:
            items.append(encode_term(term.args[0], numbering))
            term = term.args[1]
        return ["l", items, encode_term(term, numbering)]
    return ["c", term.functor, [encode_term(a, numbering) for a in term.args]]


def decode_term(data: list, variables: Dict[int, Var]) -> Term:
    tag = data[0]
    if tag == "v":
        var = variables.get(data[1])
        if var is None:
            var = variables[data[1]] = Var()
        return var
    if tag == "a":
        return Atom(data[1])
    if tag == "n":
        return Num(data[1])
    if tag == "c":
        return Compound(data[1], tuple(decode_term(a, variables) for a in data[2]))
    if tag == "l":
        items = [decode_term(a, variables) for a in data[1]]
        term = decode_term(data[2], variables)
        for item in reversed(items):
            term = Compound(LIST_FUNCTOR, (item, term))
        return term
    raise KnowledgeBaseError(f"bad term record: {data!r}")


def template_text(definition: TemplateDef) -> str:
    return f"{print_term(definition.head, 1199)} := {print_term(definition.body, 1199)}."


# -- knowledge bases ----------------------------------------------------

def to_document(kb: KnowledgeBase) -> KBDocument:
    clauses = []
    for clause in kb.clauses:
        numbering: Dict[Var, int] = {}
        clauses.append(ClauseRecord(
            head=encode_term(clause.head, numbering),
            body=[encode_term(g, numbering) for g in clause.body]))
    templates = [template_text(d) for defs in kb.signature.templates.values() for d in defs]
    return KBDocument(
        fingerprint=kb.fingerprint, options=kb.options, sources=kb.sources, signature=kb.signature,
        templates=templates, layouts=kb.layouts, clauses=clauses)


def from_document(doc: KBDocument) -> KnowledgeBase:
    if doc.format != KB_FORMAT:
        raise KnowledgeBaseError(f"not a knowledge base file (format '{doc.format}')")
    if doc.version != KB_VERSION:
        raise KnowledgeBaseError(f"unsupported knowledge base version {doc.version}")
    if doc.options is not None and doc.options.fingerprint() != doc.fingerprint:
        raise KnowledgeBaseError("compile options do not match the fingerprint")
    signature = doc.signature
    signature.templates = {}
    for item in parse_program("\n".join(doc.templates), "<templates>"):
        if isinstance(item, TemplateDef):
            signature.templates.setdefault(item.head.key, []).append(item)
    clauses = []
    for record in doc.clauses:
        variables: Dict[int, Var] = {}
        head = decode_term(record.head, variables)
        body = tuple(decode_term(g, variables) for g in record.body)
        clauses.append(CoreClause(head, body))
    return KnowledgeBase(signature, doc.layouts, clauses, doc.sources, doc.fingerprint, doc.options)


def save_kb(kb: KnowledgeBase, path: str) -> None:
    text = to_document(kb).model_dump_json(indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote knowledge base with {len(kb)} clauses to {path}")


def load_kb(path: str) -> KnowledgeBase:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise KnowledgeBaseError(f"cannot read {path}: {exc.strerror}", path)
    except json.JSONDecodeError as exc:
        raise KnowledgeBaseError(f"not a knowledge base file: {exc.msg}", path, exc.lineno)
    if not isinstance(raw, dict) or raw.get("format") != KB_FORMAT:
        raise KnowledgeBaseError("not a knowledge base file", path)
    try:
        doc = KBDocument.model_validate(raw)
    except ValidationError as exc:
        raise KnowledgeBaseError(f"malformed knowledge base: {exc.error_count()} problem(s)", path)
    try:
        return from_document(doc)
    except FitError as exc:
        raise exc.located(path)


# -- emitted program text ----------------------------------------------

def program_from_text(text: str, filename: str = "<program>") -> List[CoreClause]:
    """Read emitted program text back into clauses."""
    clauses = []
    for read in Reader(text, filename).read_all():
        term = read.term
        if isinstance(term, Compound) and term.functor == ":-" and term.arity == 2:
            head, body = term.args
            goals: List[Term] = []
            while isinstance(body, Compound) and body.functor == "," and body.arity == 2:
                goals.append(body.args[0])
                body = body.args[1]
            goals.append(body)
            clauses.append(CoreClause(head, tuple(goals)))
        else:
            clauses.append(CoreClause(term, ()))
    return clauses
