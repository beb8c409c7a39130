"""Feature search: find the unique path from a sort to a feature."""

from typing import List, Tuple

from ..decls.signature import TOP, Signature
from ..errors import SearchError


def _related(sig: Signature, sort: str, visited: Tuple[str, ...]) -> bool:
    return any(sig.subsumes(sort, v) or sig.subsumes(v, sort) for v in visited)


def search_paths(sig: Signature, start: str, feature: str) -> List[List[str]]:
    """Every path from `start` to `feature` that repeats no feature and no sort.

    Only features whose restriction is a declared sort are passed through. A
    sort counts as repeated when it is related by subsumption to one already
    on the path, so a path never enters another structure of the same sort.
    """
    paths: List[List[str]] = []

    def walk(sort: str, path: Tuple[str, ...], visited: Tuple[str, ...]) -> None:
        for name, restriction in sig.available_features(sort):
            if name in path:
                continue
            if name == feature:
                paths.append(list(path) + [name])
                continue
            if restriction == TOP or restriction not in sig.sorts or _related(sig, restriction, visited):
                continue
            walk(restriction, path + (name,), visited + (restriction,))

    walk(start, (), (start,))
    return paths


def resolve_search(sig: Signature, start: str, feature: str) -> List[str]:
    if start not in sig.sorts:
        raise SearchError(f"unknown sort '{start}' in feature search")
    if feature not in sig.features:
        raise SearchError(f"unknown feature '{feature}' in feature search")
    paths = search_paths(sig, start, feature)
    if not paths:
        raise SearchError(f"no path from '{start}' to feature '{feature}'")
    if len(paths) > 1:
        shown = ", ".join("!".join(p) for p in sorted(paths))
        raise SearchError(f"ambiguous search for '{feature}' from '{start}': {shown}")
    return paths[0]
