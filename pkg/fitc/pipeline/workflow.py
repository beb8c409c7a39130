"""LangGraph workflow for compiling feature-term programs."""

import logging
from pathlib import Path
from typing import List, Optional

from langgraph.graph import END, StateGraph

from ..compiler.compile import compile_program
from ..compiler.layout import compute_layouts
from ..config import CompileOptions
from ..decls.signature import build_signature
from ..errors import FitError
from ..generators.program_generator import ProgramGenerator
from ..syntax.parser import parse_program
from ..utils.kb_store import save_kb
from ..utils.source_loader import SourceLoader
from ..utils.validator import ProgramValidator
from .state import CompileState

logger = logging.getLogger(__name__)

PROGRAM_SUFFIX = ".pl"
KB_SUFFIX = ".kb.json"


def _banner(text: str) -> None:
    logger.info("=" * 60)
    logger.info(text)
    logger.info("=" * 60)


class CompileWorkflow:
    """Source files in, emitted program and knowledge base out."""

    def __init__(self, options: Optional[CompileOptions] = None):
        self.options = options or CompileOptions()
        self.loader = SourceLoader()
        self.generator = ProgramGenerator()
        self.validator = ProgramValidator()
        self.graph = self._build_graph()

    def _build_graph(self):
        workflow = StateGraph(CompileState)

        workflow.add_node("load_sources", self._load_sources)
        workflow.add_node("parse_sources", self._parse_sources)
        workflow.add_node("build_signature", self._build_signature)
        workflow.add_node("compute_layouts", self._compute_layouts)
        workflow.add_node("compile_clauses", self._compile_clauses)
        workflow.add_node("emit_program", self._emit_program)
        workflow.add_node("validate_output", self._validate_output)
        workflow.add_node("write_outputs", self._write_outputs)

        order = ["load_sources", "parse_sources", "build_signature", "compute_layouts",
                 "compile_clauses", "emit_program", "validate_output", "write_outputs"]
        workflow.set_entry_point(order[0])
        for current, following in zip(order, order[1:]):
            workflow.add_conditional_edges(
                current, self._route, {"continue": following, "stop": END})
        workflow.add_edge(order[-1], END)

        return workflow.compile()

    @staticmethod
    def _route(state: CompileState) -> str:
        return "stop" if state.get("error") else "continue"

    @staticmethod
    def _fail(state: CompileState, error: FitError) -> CompileState:
        diagnostic = error.to_diagnostic()
        logger.error(f"❌ {diagnostic.render()}")
        state["diagnostics"] = state["diagnostics"] + [diagnostic]
        state["error"] = diagnostic.render()
        return state

    def _load_sources(self, state: CompileState) -> CompileState:
        _banner("STEP 1: Loading source files...")
        state["step"] = "load_sources"
        try:
            state["sources"] = self.loader.load(state["paths"])
            if not state["sources"]:
                raise FitError("no source files given")
        except FitError as e:
            return self._fail(state, e)
        return state

    def _parse_sources(self, state: CompileState) -> CompileState:
        _banner("STEP 2: Parsing...")
        state["step"] = "parse_sources"
        items: List = []
        try:
            for source in state["sources"]:
                parsed = parse_program(source.text, source.path)
                logger.info(f"   {source.path}: {len(parsed)} items")
                items.extend(parsed)
        except FitError as e:
            return self._fail(state, e)
        state["items"] = items
        return state

    def _build_signature(self, state: CompileState) -> CompileState:
        _banner("STEP 3: Building signature...")
        state["step"] = "build_signature"
        try:
            state["signature"] = build_signature(state["items"])
        except FitError as e:
            return self._fail(state, e)
        return state

    def _compute_layouts(self, state: CompileState) -> CompileState:
        _banner("STEP 4: Computing term layouts...")
        state["step"] = "compute_layouts"
        state["layouts"] = compute_layouts(state["signature"])
        return state

    def _compile_clauses(self, state: CompileState) -> CompileState:
        _banner("STEP 5: Compiling clauses...")
        state["step"] = "compile_clauses"
        try:
            state["kb"] = compile_program(
                state["items"], state["signature"], state["layouts"], state["options"],
                sources=[s.path for s in state["sources"]])
        except FitError as e:
            return self._fail(state, e)
        logger.info(f"✅ {len(state['kb'])} clauses compiled")
        return state

    def _emit_program(self, state: CompileState) -> CompileState:
        _banner("STEP 6: Emitting program text...")
        state["step"] = "emit_program"
        state["program_text"] = self.generator.generate(state["kb"])
        return state

    def _validate_output(self, state: CompileState) -> CompileState:
        _banner("STEP 7: Validating output...")
        state["step"] = "validate_output"
        result = self.validator.validate(state["program_text"], state["kb"])
        state["validation"] = result
        if not result.is_valid:
            for error in result.errors[:3]:
                logger.error(f"   - {error}")
            state["error"] = "emitted program failed validation"
        else:
            logger.info("✅ Emitted program re-reads cleanly")
        return state

    def _write_outputs(self, state: CompileState) -> CompileState:
        _banner("STEP 8: Writing outputs...")
        state["step"] = "write_outputs"
        output = state.get("output")
        if not output:
            logger.info("No output path given; nothing written")
            return state
        base = Path(output[:-len(KB_SUFFIX)] if output.endswith(KB_SUFFIX) else output)
        if base.suffix == PROGRAM_SUFFIX:
            base = base.with_suffix("")
        program_path = base.with_suffix(PROGRAM_SUFFIX)
        kb_path = Path(str(base) + KB_SUFFIX)
        try:
            program_path.parent.mkdir(parents=True, exist_ok=True)
            program_path.write_text(state["program_text"], encoding="utf-8")
            save_kb(state["kb"], str(kb_path))
        except OSError as e:
            return self._fail(state, FitError(f"cannot write output: {e.strerror}", str(base)))
        state["outputs"] = {"program": str(program_path), "kb": str(kb_path)}
        logger.info(f"✅ Wrote {program_path} and {kb_path}")
        return state

    def run(self, paths: List[str], output: Optional[str] = None) -> CompileState:
        """Run the workflow over source files."""
        initial_state: CompileState = {
            "paths": list(paths),
            "options": self.options,
            "output": output,
            "sources": [],
            "items": [],
            "signature": None,
            "layouts": None,
            "kb": None,
            "program_text": None,
            "validation": None,
            "outputs": {},
            "diagnostics": [],
            "error": None,
            "step": "initialized",
        }
        return self.graph.invoke(initial_state)
