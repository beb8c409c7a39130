"""Tests for decompiling answers back into feature-term syntax."""

from itertools import islice

import pytest

from fitc.compiler.compile import compile_term
from fitc.config import Settings
from fitc.decomp.decode import decode, findom_expression
from fitc.decomp.render import render
from fitc.engine.store import BindingStore
from fitc.engine.terms import Atom, Compound
from fitc.errors import DecodeError
from fitc.session import QuerySession
from fitc.syntax.ast import FDAnd, FDAnnot, FDAtom, FDWhole, FinDom
from fitc.syntax.parser import parse_term
from fitc.syntax.printer import print_term

WORDS = """
agr fin_dom [1,2,3] * [sg,pl].
word intro [agr:agr, form].
w(<word & form!x).
"""


def first_answer(program, text, **settings):
    session = QuerySession(program.kb, Settings(**settings))
    return next(iter(session.solutions(text))).bindings


class TestFinDomExpression:
    def test_single_element(self, agr):
        assert findom_expression(agr.sig, "agr", [0]) == FDAnd(FDAtom(1), FDAtom("sg"))

    def test_whole_domain(self, agr):
        assert findom_expression(agr.sig, "agr", range(6)) == FDAnnot(FDWhole(), "agr")

    def test_single_atom_is_annotated(self, build):
        program = build("num fin_dom [sg, pl].")
        expr = findom_expression(program.sig, "num", [1])
        assert expr == FDAnnot(FDAtom("pl"), "num")

    def test_shared_atoms_are_annotated(self, build):
        program = build("a fin_dom [x, y, z]. b fin_dom [x, y, z].")
        expr = findom_expression(program.sig, "a", [0, 1])
        assert print_term(FinDom(expr)) == "(x or y)@a"

    def test_empty(self, agr):
        with pytest.raises(DecodeError, match="empty"):
            findom_expression(agr.sig, "agr", [])


class TestAnswers:
    def test_plain_atom(self, agr):
        assert first_answer(agr, "verb(W, A).") == ["W = sleeps", "A = 3&sg"]

    def test_negated_value(self, agr):
        session = QuerySession(agr.kb)
        answers = [a.bindings for a in session.solutions("verb(W, A).")]
        assert answers[1] == ["W = sleep", "A = 1&sg or 2&sg or 1&pl or 2&pl or 3&pl"]
        assert answers[4] == ["W = are", "A = 2&sg or 1&pl or 2&pl or 3&pl"]

    def test_whole_domain(self, agr):
        assert first_answer(agr, "A = _@agr.") == ["A = _@agr"]

    def test_sorts_and_features(self, trees):
        assert first_answer(trees, "tree(t1, T).") == [
            "T = label!a & left_daughter!(<leaf & label!b) & right_daughter!(<leaf & label!c)"
        ]

    def test_uninformative_features_are_left_out(self, build):
        program = build(WORDS)
        assert first_answer(program, "w(X).") == ["X = form!x"]
        assert first_answer(program, "w(X), X = agr!(3&sg).") == ["X = agr!(3&sg) & form!x"]

    def test_shared_structure(self, member):
        assert first_answer(member, "X = f(Y, Y), Y = g(a).") == ["X = f(A & g(a), A)", "Y = A"]

    def test_aliased_variables(self, member):
        assert first_answer(member, "X = Y.") == ["Y = X"]

    def test_unbound_variables(self, member):
        session = QuerySession(member.kb)
        answers = [a.bindings for a in islice(session.solutions("member(X, [a|T])."), 2)]
        assert answers[0] == ["X = a"]
        assert answers[1] == ["T = [X|A]"]

    def test_cycle_is_tagged(self, cyclic):
        assert first_answer(cyclic, "loop(X).") == ["X = A & f(A)"]

    def test_cycle_unfolded(self, cyclic):
        assert first_answer(cyclic, "loop(X).", cyclic_print=False) == ["X = f(f(f(...)))"]

    def test_cyclic_answer_reads_back(self, cyclic):
        [binding] = first_answer(cyclic, "loop(X).")
        text = binding.split(" = ", 1)[1]
        [compiled] = compile_term(parse_term(text), cyclic.sig, cyclic.table)
        _, equations = compiled.resolved()
        assert len(equations) == 1

    def test_pretty(self, trees):
        [binding] = first_answer(trees, "tree(t1, T).", pretty=True)
        assert binding == (
            "T = label!a &\n"
            "    left_daughter!(\n"
            "      <leaf &\n"
            "      label!b\n"
            "    ) &\n"
            "    right_daughter!(\n"
            "      <leaf &\n"
            "      label!c\n"
            "    )"
        )


class TestDecoder:
    def test_malformed_functor(self, hpsg):
        with pytest.raises(DecodeError, match="malformed"):
            decode(Compound("$nosuch", (Atom("a"),)), BindingStore(), hpsg.table, hpsg.sig)

    def test_wrong_arity(self, hpsg):
        with pytest.raises(DecodeError):
            decode(Compound("$sign", (Atom("a"),)), BindingStore(), hpsg.table, hpsg.sig)

    def test_plain_terms_pass_through(self, hpsg):
        term = decode(Compound("f", (Atom("a"),)), BindingStore(), hpsg.table, hpsg.sig)
        assert print_term(term) == "f(a)"


class TestRender:
    def test_plain(self):
        term = parse_term("f!a & g!(<s & h!b)")
        assert render(term) == "f!a & g!(<s & h!b)"

    def test_pretty_nested(self):
        term = parse_term("f!a & g!(<s & h!b)")
        assert render(term, "pretty", 4) == "f!a &\ng!(\n    <s &\n    h!b\n)"

    def test_unknown_style(self):
        with pytest.raises(ValueError):
            render(parse_term("a"), "fancy")
