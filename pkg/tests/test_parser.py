"""Tests for program items and feature-term syntax trees."""

import pytest

from fitc.errors import FitSyntaxError
from fitc.syntax.ast import (
    ClauseItem, CombinedDecl, Conj, Disj, DoubleQuote, ExtensionalDecl, FDAnd, FDAnnot,
    FDAtom, FDNeg, FDOr, FDWhole, FeatVal, FinDom, FinDomDecl, IntroDecl, PlainConst,
    PlainStruct, PlainVar, Quote, Search, SortRef, SubsortDecl, TemplateCall, TemplateDef,
)
from fitc.syntax.parser import parse_program, parse_query, parse_term


def one_item(text):
    items = parse_program(text)
    assert len(items) == 1
    return items[0]


class TestDeclarations:
    def test_subsort_declaration(self):
        item = one_item("binary_tree > [leaf, internal_node].")
        assert item == SubsortDecl("binary_tree", (("leaf", "internal_node"),))

    def test_dimensions(self):
        item = one_item("phrasal > [headed,non_headed] * [decl,int,rel].")
        assert item.dimensions == (("headed", "non_headed"), ("decl", "int", "rel"))

    def test_combined_declaration(self):
        item = one_item("binary_tree > [leaf,internal_node] intro [label].")
        assert isinstance(item, CombinedDecl)
        assert item.super == "binary_tree"
        assert item.features == (("label", "top"),)

    def test_intro_with_restrictions(self):
        item = one_item("internal_node intro [left_daughter:binary_tree, right_daughter:binary_tree].")
        assert item == IntroDecl("internal_node", (
            ("left_daughter", "binary_tree"), ("right_daughter", "binary_tree")))

    def test_fin_dom(self):
        item = one_item("agr fin_dom [1,2,3] * [sg,pl].")
        assert item == FinDomDecl("agr", ((1, 2, 3), ("sg", "pl")))

    def test_extensional(self):
        item = one_item("extensional [elist, nelist].")
        assert item == ExtensionalDecl(("elist", "nelist"))

    def test_template_definition(self):
        item = one_item("first([First|Rest]) := First.")
        assert isinstance(item, TemplateDef)
        assert item.head.name == "first"
        assert item.head.key == "first/1"
        assert item.body == PlainVar("First")

    def test_template_head_may_carry_at(self):
        item = one_item("@semantics(S) := synsem!local!cont!S.")
        assert item.head.name == "semantics"

    def test_locations_are_recorded(self):
        items = parse_program("a > [b].\n\np(x).", "prog.fit")
        assert (items[0].file, items[0].line) == ("prog.fit", 1)
        assert items[1].line == 3

    def test_empty_dimension(self):
        with pytest.raises(FitSyntaxError, match="empty dimension"):
            parse_program("a > [].")

    def test_reserved_names(self):
        with pytest.raises(FitSyntaxError, match="reserved"):
            parse_program("'$a' > [b].")

    def test_directive_rejected(self):
        with pytest.raises(FitSyntaxError, match="directives"):
            parse_program(":- foo.")


class TestClauses:
    def test_fact(self):
        item = one_item("verb(sleeps, 3&sg).")
        assert isinstance(item, ClauseItem)
        assert item.head == PlainStruct("verb", (
            PlainConst("sleeps"), FinDom(FDAnd(FDAtom(3), FDAtom("sg")))))
        assert item.body == ()

    def test_rule(self):
        item = one_item("member(E, L) :- member(E, @rest(L)), true.")
        assert len(item.body) == 2
        assert item.body[0].args[1] == TemplateCall("rest", (PlainVar("L"),))

    def test_variable_head_rejected(self):
        with pytest.raises(FitSyntaxError, match="variable"):
            parse_program("X :- p.")

    def test_description_head_rejected(self):
        with pytest.raises(FitSyntaxError, match="must be a predicate"):
            parse_program("<a.")


class TestDescriptions:
    def test_sort_and_features(self):
        term = parse_term("<internal_node & label!a & left_daughter!<leaf")
        assert term == Conj(SortRef("internal_node"), Conj(
            FeatVal("label", PlainConst("a")), FeatVal("left_daughter", SortRef("leaf"))))

    def test_path(self):
        term = parse_term("synsem!local!cat!subcat!<elist")
        assert term == FeatVal("synsem", FeatVal("local", FeatVal("cat", FeatVal(
            "subcat", SortRef("elist")))))

    def test_disjunction_of_sorts(self):
        term = parse_term("<head_comp or <head_marker or <head_filler")
        assert term == Disj(SortRef("head_comp"), Disj(SortRef("head_marker"), SortRef("head_filler")))

    def test_searches(self):
        assert parse_term(">>>cont!X") == Search(None, "cont", PlainVar("X"))
        assert parse_term("sign>>>head!X") == Search("sign", "head", PlainVar("X"))

    def test_nested_prefix_search(self):
        term = parse_term(">>>adj_dtr!>>>cont!X")
        assert term == Search(None, "adj_dtr", Search(None, "cont", PlainVar("X")))

    def test_search_needs_feature_value(self):
        with pytest.raises(FitSyntaxError, match=">>>Feature!Value"):
            parse_term(">>>cont")

    def test_coreference_tag(self):
        term = parse_term("X & f(X)")
        assert term == Conj(PlainVar("X"), PlainStruct("f", (PlainVar("X"),)))

    def test_quotes(self):
        assert parse_term("`(a & b)") == Quote(PlainStruct("&", (PlainConst("a"), PlainConst("b"))))
        term = parse_term("``f(<a, `<b)")
        assert term == DoubleQuote(PlainStruct("f", (SortRef("a"), Quote(PlainStruct("<", (PlainConst("b"),))))))

    def test_template_calls(self):
        assert parse_term("@np") == TemplateCall("np", ())
        assert parse_term("@first(L)") == TemplateCall("first", (PlainVar("L"),))


class TestFiniteDomains:
    def test_connectives(self):
        assert parse_term("~(3&sg)") == FinDom(FDNeg(FDAnd(FDAtom(3), FDAtom("sg"))))
        assert parse_term("2 or pl") == FinDom(FDOr(FDAtom(2), FDAtom("pl")))

    def test_annotation(self):
        assert parse_term("2@agr") == FinDom(FDAnnot(FDAtom(2), "agr"))

    def test_whole_domain(self):
        assert parse_term("_@agr") == FinDom(FDAnnot(FDWhole(), "agr"))
        assert parse_term("V@agr") == Conj(PlainVar("V"), FinDom(FDAnnot(FDWhole(), "agr")))

    def test_plain_atom_stays_plain(self):
        assert parse_term("pl") == PlainConst("pl")

    def test_values_merge_around_descriptions(self):
        value = FinDom(FDAnd(FDAtom(1), FDAtom("sg")))
        assert parse_term("1&sg & A") == Conj(value, PlainVar("A"))
        assert parse_term("A & 1&sg") == Conj(PlainVar("A"), value)
        assert parse_term("1 & A & sg") == Conj(value, PlainVar("A"))

    def test_single_atom_beside_description(self):
        assert parse_term("pl & A") == Conj(PlainConst("pl"), PlainVar("A"))

    def test_negation_outside_domains(self):
        with pytest.raises(FitSyntaxError, match="negation"):
            parse_term("~f(a)")


class TestQueries:
    def test_query_prefix_and_period_are_optional(self):
        assert parse_query("?- verb(W, 1&sg).") == parse_query("verb(W, 1&sg)")

    def test_conjunctive_query(self):
        goals = parse_query("?- np(you, A), verb(are, A).")
        assert [g.functor for g in goals] == ["np", "verb"]

    def test_empty_query(self):
        with pytest.raises(FitSyntaxError, match="empty query"):
            parse_query("   ")

    def test_two_clauses(self):
        with pytest.raises(FitSyntaxError, match="single clause"):
            parse_query("p. q.")


class TestLongTerms:
    def test_long_list(self):
        term = parse_term("[" + ", ".join(str(i) for i in range(3000)) + "]")
        items = []
        while isinstance(term, PlainStruct) and term.functor == ".":
            items.append(term.args[0])
            term = term.args[1]
        assert len(items) == 3000
        assert items[-1] == PlainConst(2999)
        assert term == PlainConst("[]")

    def test_deep_nesting_is_a_syntax_error(self):
        text = "p(" + "f(" * 5000 + "a" + ")" * 5000 + ").\n"
        with pytest.raises(FitSyntaxError, match="nested too deeply") as info:
            parse_program(text, "deep.fit")
        assert str(info.value).startswith("deep.fit: syntax:")
