"""Tests for signature building and validation."""

import pytest

from fitc.decls.signature import TOP, build_signature
from fitc.errors import SignatureError
from fitc.syntax.parser import parse_program


def signature(text):
    return build_signature(parse_program(text, "sig.fit"))


TREES = """
binary_tree > [leaf, internal_node]
    intro [label].
internal_node
    intro [left_daughter:binary_tree, right_daughter:binary_tree].
"""


class TestHierarchy:
    def test_binary_tree(self):
        sig = signature(TREES)
        assert sig.features["label"].introducer == "binary_tree"
        assert sig.features["label"].restriction == TOP
        assert sig.features["left_daughter"].restriction == "binary_tree"
        assert sig.sorts["leaf"].parent == "binary_tree"
        assert sig.sorts["binary_tree"].parent == TOP

    def test_orphans_go_under_top(self):
        sig = signature(TREES)
        assert sig.sorts[TOP].dimensions == [["binary_tree"]]

    def test_dimensions(self, hpsg):
        phrasal = hpsg.sig.sorts["phrasal"]
        assert phrasal.dimensions == [["headed", "non_headed"], ["decl", "int", "rel"]]
        assert phrasal.intro_features == [("dtrs", "const_struc")]
        assert hpsg.sig.sorts["decl"].parent_dimension == 1

    def test_chain_and_subsumption(self, hpsg):
        sig = hpsg.sig
        assert sig.chain("head_adj") == ["sign", "phrasal", "headed", "head_adj"]
        assert sig.subsumes("sign", "head_adj")
        assert sig.subsumes(TOP, "head_adj")
        assert not sig.subsumes("head_adj", "sign")

    def test_available_features_are_ancestor_first(self, hpsg):
        names = [f for f, _ in hpsg.sig.available_features("head_comp")]
        assert names == ["phon", "synsem", "qstore", "retrieved", "dtrs"]

    def test_extensional_propagates(self, hpsg):
        assert hpsg.sig.sorts["subcat"].extensional
        assert hpsg.sig.sorts["elist"].extensional
        assert not hpsg.sig.sorts["sign"].extensional

    def test_templates_are_registered(self, member):
        assert [d.head.name for d in member.sig.template_definitions("first", 1)] == ["first"]

    def test_domain_elements(self, agr):
        info = agr.sig.domains["agr"]
        assert info.elements == [(1, "sg"), (2, "sg"), (3, "sg"), (1, "pl"), (2, "pl"), (3, "pl")]

    def test_unknown_sort(self):
        with pytest.raises(SignatureError, match="unknown sort"):
            signature(TREES).sort("nope")


class TestErrors:
    @pytest.mark.parametrize("text,message", [
        ("a > [b]. a > [c].", "defined more than once"),
        ("a > [b]. b > [c]. c > [a].", "cyclic sort hierarchy"),
        ("s > [t]. u intro [f]. t intro [f].", "introduced at both"),
        ("a > [b]. c > [b].", "subsort of both"),
        ("a > [b, b].", "listed twice"),
        ("top > [a] * [b].", "only one dimension"),
        ("a > [top].", "top cannot be a subsort"),
        ("top intro [f].", "top cannot introduce"),
        ("a intro [f:nowhere].", "unknown sort or domain"),
        ("d fin_dom [a,b]. d fin_dom [c].", "declared twice"),
        ("d fin_dom [a,b] * [b,c].", "duplicate element"),
        ("d fin_dom [a,b]. d > [e].", "names both a sort and a finite domain"),
        ("a > [b]. extensional [b].", "immediate subsorts of top"),
        ("extensional [ghost].", "unknown sort"),
    ])
    def test_rejected(self, text, message):
        with pytest.raises(SignatureError, match=message):
            signature(text)

    def test_error_location(self):
        with pytest.raises(SignatureError) as info:
            signature("s intro [f].\n\nt intro [f].")
        assert info.value.file == "sig.fit"
        assert info.value.line == 3
        assert info.value.error_class == "signature"
