"""Tests for the reference feature-structure unifier."""

import random

import pytest

from fitc.syntax.parser import parse_term
from oracle import (
    canonical, compatible, expected_pairs, findom_sets, from_description, fs_unify,
    most_specific, random_description, random_signature,
)


def graph(text, sig):
    return from_description(parse_term(text), sig)


class TestSorts:
    def test_dimensions_combine(self, hpsg):
        assert compatible(hpsg.sig, {"headed", "decl"})
        assert not compatible(hpsg.sig, {"headed", "non_headed"})

    def test_most_specific(self, hpsg):
        assert most_specific(hpsg.sig, {"sign", "phrasal", "decl"}) == {"decl"}


class TestUnify:
    def test_success(self, trees):
        result = fs_unify(graph("<leaf & label!a", trees.sig), graph("label!X & <binary_tree", trees.sig),
                          trees.sig)
        assert canonical(result) == canonical(graph("<leaf & label!a", trees.sig))

    def test_sort_clash(self, trees):
        assert fs_unify(graph("<leaf", trees.sig), graph("<internal_node", trees.sig), trees.sig) is None

    def test_atom_clash(self, trees):
        assert fs_unify(graph("label!a", trees.sig), graph("label!b", trees.sig), trees.sig) is None

    def test_feature_implies_its_introducer(self, trees):
        result = graph("left_daughter!_", trees.sig)
        assert result.nodes[result.root].sorts == {"internal_node"}

    def test_restriction(self, trees):
        assert graph("left_daughter!a", trees.sig) is None
        target = graph("left_daughter!X", trees.sig)
        [node] = [n for i, n in target.nodes.items() if i != target.root]
        assert node.sorts == {"binary_tree"}

    def test_cycle(self, trees):
        result = graph("X & left_daughter!X", trees.sig)
        assert canonical(result) == ((("internal_node",), None, (("left_daughter", 0),)),)

    def test_shared_values(self, trees):
        shared = canonical(graph("left_daughter!X & right_daughter!X", trees.sig))
        separate = canonical(graph("left_daughter!X & right_daughter!Y", trees.sig))
        assert shared != separate

    def test_inputs_untouched(self, trees):
        g1 = graph("label!X", trees.sig)
        before = canonical(g1)
        fs_unify(g1, graph("label!a", trees.sig), trees.sig)
        assert canonical(g1) == before

    def test_unsupported_term(self, trees):
        with pytest.raises(TypeError):
            graph("f(a)", trees.sig)


def test_associative():
    rng = random.Random(7)
    checked = 0
    for _ in range(200):
        sig = random_signature(rng)
        a, b, c = (from_description(random_description(rng, sig), sig) for _ in range(3))
        if None in (a, b, c):
            continue
        ab = fs_unify(a, b, sig)
        bc = fs_unify(b, c, sig)
        left = fs_unify(ab, c, sig) if ab else None
        right = fs_unify(a, bc, sig) if bc else None
        assert (left is None) == (right is None)
        if left is not None:
            assert canonical(left) == canonical(right)
        checked += 1
    assert checked > 0


class TestFinDomSets:
    def test_counts(self):
        assert len(findom_sets(6)) == 64
        assert len(expected_pairs(6)) == 63 * 63

    def test_intersections(self):
        pairs = expected_pairs(2)
        assert (frozenset({0}), frozenset({0, 1}), frozenset({0})) in pairs
        assert (frozenset({0}), frozenset({1}), frozenset()) in pairs

    def test_too_large(self):
        with pytest.raises(ValueError):
            findom_sets(13)
