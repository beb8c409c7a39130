"""Subsets of a finite domain, for exhaustive encoding checks."""

from itertools import combinations
from typing import FrozenSet, List, Tuple


def findom_sets(size: int) -> List[FrozenSet[int]]:
    """Every subset of range(size), smallest first."""
    if size > 12:
        raise ValueError("domain too large to enumerate")
    subsets = []
    for k in range(size + 1):
        subsets.extend(frozenset(c) for c in combinations(range(size), k))
    return subsets


def expected_pairs(size: int) -> List[Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]]:
    """(left, right, intersection) for every ordered pair of non-empty subsets."""
    sets = [s for s in findom_sets(size) if s]
    return [(a, b, a & b) for a in sets for b in sets]
