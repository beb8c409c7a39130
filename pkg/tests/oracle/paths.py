"""Exhaustive enumeration of feature paths."""

from typing import List

from fitc.decls.signature import TOP, Signature


def _ancestors(sig: Signature, sort: str) -> List[str]:
    found = []
    while sort != TOP:
        found.append(sort)
        sort = sig.sorts[sort].parent
    return found


def _features_of(sig: Signature, sort: str):
    for ancestor in reversed(_ancestors(sig, sort)):
        yield from sig.sorts[ancestor].intro_features


def enumerate_paths(sig: Signature, start: str, feature: str) -> List[List[str]]:
    """All paths from `start` to `feature` repeating no feature and entering no
    sort related to one already visited; sorted."""
    found: List[List[str]] = []

    def related(a: str, b: str) -> bool:
        return a in _ancestors(sig, b) or b in _ancestors(sig, a)

    def visit(sort: str, path: List[str], seen_sorts: List[str]) -> None:
        for name, restriction in _features_of(sig, sort):
            if name in path:
                continue
            if name == feature:
                found.append(path + [name])
            elif restriction in sig.sorts and restriction != TOP:
                if not any(related(restriction, s) for s in seen_sorts):
                    visit(restriction, path + [name], seen_sorts + [restriction])

    visit(start, [], [start])
    return sorted(found)
