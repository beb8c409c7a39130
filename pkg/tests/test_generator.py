"""Tests for emitted program text and its validation."""

from fitc.generators import ProgramGenerator, clause_text
from fitc.utils.validator import ProgramValidator


class TestProgramGenerator:
    def test_header(self, agr):
        text = ProgramGenerator().generate(agr.kb)
        assert text.startswith("% Generated by fitc. Do not edit.\n% source: agr.fit\n")
        assert f"% options: {agr.kb.fingerprint}\n" in text
        assert "% clauses: 7\n" in text

    def test_clauses_in_source_order(self, agr):
        lines = [l for l in ProgramGenerator().generate(agr.kb).splitlines()
                 if l and not l.startswith("%")]
        assert lines[0] == "verb(sleeps, '$agr'(1, 1, 1, 0, 0, 0, 0))."
        assert [l.split("(")[0] for l in lines] == ["verb"] * 5 + ["np"] * 2

    def test_custom_template(self, member):
        text = ProgramGenerator(r"{{ clauses | join('\n') }}").generate(member.kb)
        assert text == "\n".join(clause_text(c) for c in member.kb.clauses)


class TestProgramValidator:
    def test_generated_program_is_valid(self, hpsg):
        text = ProgramGenerator().generate(hpsg.kb)
        result = ProgramValidator().validate(text, hpsg.kb)
        assert result.is_valid, result.errors

    def test_syntax_error(self, agr):
        result = ProgramValidator().validate("verb(sleeps", agr.kb)
        assert not result.is_valid
        assert result.errors[0].startswith("Syntax error")

    def test_clause_count(self, agr):
        text = ProgramGenerator().generate(agr.kb)
        shorter = "\n".join(text.splitlines()[:-1])
        result = ProgramValidator().validate(shorter, agr.kb)
        assert result.errors == ["Program text has 6 clauses, knowledge base has 7"]

    def test_unknown_functor(self, agr):
        text = ProgramGenerator().generate(agr.kb).replace("'$agr'", "'$agx'")
        result = ProgramValidator().validate(text, agr.kb)
        assert result.errors == ["Unknown encoded functor $agx/7"]

    def test_undefined_predicate_warning(self, build):
        program = build("p :- q, true.")
        text = ProgramGenerator().generate(program.kb)
        result = ProgramValidator().validate(text, program.kb)
        assert result.is_valid
        assert result.warnings == ["No clauses for q/0"]
