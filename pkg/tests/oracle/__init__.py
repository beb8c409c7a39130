"""Reference implementations used to check the compiler and the engine."""

from .findom import expected_pairs, findom_sets
from .generate import random_description, random_signature
from .graph import FeatureGraph, Node, canonical, compatible, from_description, fs_unify, most_specific
from .paths import enumerate_paths

__all__ = [
    "FeatureGraph",
    "Node",
    "canonical",
    "compatible",
    "enumerate_paths",
    "expected_pairs",
    "findom_sets",
    "from_description",
    "fs_unify",
    "most_specific",
    "random_description",
    "random_signature",
]
