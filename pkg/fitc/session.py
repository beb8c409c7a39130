"""Query sessions over a compiled knowledge base."""

import logging
from dataclasses import dataclass
from typing import IO, Iterator, List, Optional

from .compiler.compile import KnowledgeBase, compile_query
from .config import CompileOptions, Settings, options_from_settings
from .decomp.decode import Decoder
from .decomp.render import render
from .engine.solver import Solution, Solver
from .engine.store import BindingStore
from .engine.terms import Var
from .errors import DecodeError, FitError
from .syntax.parser import parse_query

logger = logging.getLogger(__name__)


@dataclass
class Answer:
    """One solution, rendered."""
    bindings: List[str]

    def text(self) -> str:
        return ",\n".join(self.bindings) if self.bindings else "yes"


class QuerySession:
    """Runs feature-term queries and prints answers in feature-term notation."""

    def __init__(self, kb: KnowledgeBase, settings: Optional[Settings] = None,
                 options: Optional[CompileOptions] = None):
        self.kb = kb
        self.settings = settings or Settings()
        self.options = self._query_options(options or options_from_settings(self.settings))
        self.solver = Solver(kb, unknown_predicate=self.settings.unknown_predicate,
                             max_steps=self.settings.max_steps)

    def _query_options(self, requested: CompileOptions) -> CompileOptions:
        """Queries compile with the switches the knowledge base was compiled with."""
        compiled = self.kb.options
        if compiled is None:
            return requested
        if requested.fingerprint() != compiled.fingerprint():
            logger.warning(
                f"Knowledge base was compiled with sort_check={compiled.sort_check}, "
                f"feature_search={compiled.feature_search}; queries use the same")
        return requested.model_copy(update={
            "sort_check": compiled.sort_check,
            "feature_search": compiled.feature_search,
        })

    def solutions(self, text: str) -> Iterator[Answer]:
        """Answers to a query, lazily, in solution order."""
        goals = parse_query(text)
        for query in compile_query(goals, self.kb.signature, self.kb.layouts, self.options):
            names = {name: var for name, var in query.variables.items() if not name.startswith("_")}
            for solution in self.solver.solve(query.goals, query.store, names):
                yield self.answer(solution, names)

    def answer(self, solution: Solution, names: dict) -> Answer:
        store = solution.store
        shown = []
        var_names = {}
        for name, var in names.items():
            value = store.deref(var)
            if isinstance(value, Var) and value not in var_names:
                var_names[value] = name
            else:
                shown.append((name, value))
        decoder = Decoder(store, self.kb.layouts, self.kb.signature,
                          var_names=var_names, taken=names.keys(),
                          cyclic_print=self.options.cyclic_print,
                          truncate_depth=self.options.truncate_depth)
        style = "pretty" if self.options.pretty else "plain"
        try:
            decoded = decoder.decode_all([value for _, value in shown])
            texts = [render(term, style, self.options.indent) for term in decoded]
        except RecursionError:
            raise DecodeError("answer is nested too deeply to print") from None
        lines = []
        for (name, _), text in zip(shown, texts):
            if "\n" in text:
                text = text.replace("\n", "\n" + " " * (len(name) + 3))
            lines.append(f"{name} = {text}")
        return Answer(lines)

    def run_batch(self, text: str, out: IO[str]) -> int:
        """Print every answer (up to max_solutions) followed by `no`; returns an exit status."""
        try:
            count = 0
            for answer in self.solutions(text):
                out.write(answer.text() + " ;\n")
                count += 1
                if count >= self.settings.max_solutions:
                    logger.warning(f"Stopped after {count} solutions")
                    return 0
            out.write("no\n")
            return 0
        except FitError as e:
            out.write(f"error: {e}\n")
            return 1

    def run_interactive(self, stdin: IO[str], out: IO[str]) -> None:
        """Read queries until end of input; `;` asks for the next answer."""
        while True:
            out.write("?- ")
            out.flush()
            line = stdin.readline()
            if not line:
                out.write("\n")
                return
            if not line.strip():
                continue
            try:
                answers = self.solutions(line)
                for answer in answers:
                    out.write(answer.text() + " ")
                    out.flush()
                    reply = stdin.readline()
                    if reply.strip() != ";":
                        out.write("\n")
                        break
                else:
                    out.write("no\n")
            except FitError as e:
                out.write(f"error: {e}\n")

    def listing(self, predicate: Optional[str] = None) -> str:
        """Stored clauses in feature-term notation, optionally for one name/arity."""
        wanted = None
        if predicate:
            name, _, arity = predicate.rpartition("/")
            if not name or not arity.isdigit():
                raise FitError(f"expected name/arity, got '{predicate}'")
            wanted = (name, int(arity))
        style = "pretty" if self.options.pretty else "plain"
        texts = []
        for clause in self.kb.clauses:
            if wanted and clause.key != wanted:
                continue
            decoder = Decoder(BindingStore(), self.kb.layouts, self.kb.signature,
                              cyclic_print=self.options.cyclic_print,
                              truncate_depth=self.options.truncate_depth)
            head, *body = decoder.decode_all([clause.head, *clause.body])
            text = render(head, style, self.options.indent)
            if body:
                goals = ",\n    ".join(render(goal, style, self.options.indent) for goal in body)
                text += f" :-\n    {goals}"
            texts.append(text + ".")
        return "\n".join(texts)
