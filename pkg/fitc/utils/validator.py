"""Checks on emitted program text."""

import logging
from typing import List, Tuple

from pydantic import BaseModel, Field

from ..compiler.compile import KnowledgeBase
from ..engine.terms import Atom, Compound, Term
from ..errors import FitError
from .kb_store import program_from_text

logger = logging.getLogger(__name__)


class ValidationResult(BaseModel):
    """Program validation results."""
    is_valid: bool
    errors: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)


def _encoded_functors(term: Term, found: set) -> None:
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Compound):
            if t.functor.startswith("$"):
                found.add((t.functor, len(t.args)))
            stack.extend(t.args)
        elif isinstance(t, Atom) and t.name.startswith("$"):
            found.add((t.name, 0))


class ProgramValidator:
    """Validates emitted program text against the knowledge base it came from."""

    @staticmethod
    def validate_syntax(text: str) -> Tuple[list, List[str]]:
        try:
            return program_from_text(text), []
        except FitError as e:
            return [], [f"Syntax error: {e}"]

    @staticmethod
    def validate_functors(clauses: list, kb: KnowledgeBase) -> List[str]:
        known = kb.layouts.functor_index()
        found: set = set()
        for clause in clauses:
            _encoded_functors(clause.head, found)
            for goal in clause.body:
                _encoded_functors(goal, found)
        return [f"Unknown encoded functor {name}/{arity}"
                for name, arity in sorted(found) if (name, arity) not in known]

    @staticmethod
    def check_predicates(kb: KnowledgeBase) -> List[str]:
        warnings = []
        for clause in kb.clauses:
            for goal in clause.body:
                key = goal.functor if isinstance(goal, Compound) else getattr(goal, "name", None)
                arity = len(goal.args) if isinstance(goal, Compound) else 0
                if key in ("true", "=") or key is None:
                    continue
                if not kb.defines(key, arity):
                    warnings.append(f"No clauses for {key}/{arity}")
        return sorted(set(warnings))

    def validate(self, text: str, kb: KnowledgeBase) -> ValidationResult:
        """Run all validation checks."""
        clauses, errors = self.validate_syntax(text)
        if not errors and len(clauses) != len(kb):
            errors.append(f"Program text has {len(clauses)} clauses, knowledge base has {len(kb)}")
        if not errors:
            errors.extend(self.validate_functors(clauses, kb))
        warnings = self.check_predicates(kb)
        for warning in warnings:
            logger.warning(warning)
        return ValidationResult(is_valid=not errors, errors=errors, warnings=warnings)
