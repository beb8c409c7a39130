"""Emitted logic program text."""

import logging
from typing import List

from jinja2 import Environment, StrictUndefined

from ..compiler.compile import CoreClause, KnowledgeBase
from ..syntax.printer import variable_namer, write_goal, write_term

logger = logging.getLogger(__name__)

PROGRAM_TEMPLATE = """\
% Generated by fitc. Do not edit.
{% for source in sources -%}
% source: {{ source }}
{% endfor -%}
% options: {{ fingerprint }}
% clauses: {{ clauses | length }}
{% for clause in clauses %}
{{ clause }}
{%- endfor %}
"""

_environment = Environment(undefined=StrictUndefined, keep_trailing_newline=True,
                           autoescape=False)


def clause_text(clause: CoreClause) -> str:
    """One clause; variables are named A, B, ... in order of appearance."""
    name_of = variable_namer()
    head = write_term(clause.head, name_of)
    if not clause.body:
        return f"{head}."
    goals = ",\n    ".join(write_goal(goal, name_of) for goal in clause.body)
    return f"{head} :-\n    {goals}."


class ProgramGenerator:
    """Renders a knowledge base as a program any resolution engine can load."""

    def __init__(self, template: str = PROGRAM_TEMPLATE):
        self.template = _environment.from_string(template)

    def generate(self, kb: KnowledgeBase) -> str:
        clauses: List[str] = [clause_text(c) for c in kb.clauses]
        text = self.template.render(
            sources=kb.sources, fingerprint=kb.fingerprint, clauses=clauses)
        logger.info(f"Generated program text with {len(clauses)} clauses")
        return text
