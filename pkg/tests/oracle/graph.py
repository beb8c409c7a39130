"""Brute-force sorted feature structures over an explicit node graph.

Nodes carry a set of sorts, an optional atom and feature edges. Unification
merges nodes with a union-find table and checks each merged node at the end:
its sorts must pick the same subsort wherever two of them choose within one
dimension, an atom excludes sorts and features, and two atoms must agree.
Nothing here uses the compiler or the engine.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from fitc.decls.signature import TOP, Signature
from fitc.syntax.ast import Conj, FeatVal, PlainConst, PlainVar, SortRef


@dataclass
class Node:
    sorts: FrozenSet[str] = frozenset()
    atom: Optional[object] = None
    features: Dict[str, int] = field(default_factory=dict)


@dataclass
class FeatureGraph:
    nodes: Dict[int, Node]
    root: int


def choices(sig: Signature, sort: str) -> Dict[Tuple[str, int], str]:
    """(parent, dimension) -> chosen subsort, for every step up to top."""
    picked = {}
    current = sort
    while current != TOP:
        info = sig.sorts[current]
        picked[(info.parent, info.parent_dimension)] = current
        current = info.parent
    return picked


def compatible(sig: Signature, sorts) -> bool:
    picked: Dict[Tuple[str, int], str] = {}
    for sort in sorts:
        for key, child in choices(sig, sort).items():
            if picked.setdefault(key, child) != child:
                return False
    return True


def most_specific(sig: Signature, sorts) -> FrozenSet[str]:
    ancestors = set()
    for sort in sorts:
        ancestors.update(a for a in choices(sig, sort).values() if a != sort)
    return frozenset(s for s in sorts if s not in ancestors and s != TOP)


class _Builder:
    """Mutable graph with node merging; `freeze` checks and copies it out."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.parent: List[int] = []
        self.sorts: List[set] = []
        self.atoms: List[list] = []
        self.features: List[Dict[str, int]] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        self.sorts.append(set())
        self.atoms.append([])
        self.features.append({})
        return len(self.parent) - 1

    def find(self, n: int) -> int:
        while self.parent[n] != n:
            self.parent[n] = self.parent[self.parent[n]]
            n = self.parent[n]
        return n

    def constrain(self, n: int, sort: str) -> None:
        if sort != TOP:
            self.sorts[self.find(n)].add(sort)

    def set_atom(self, n: int, value) -> None:
        self.atoms[self.find(n)].append(value)

    def feature(self, n: int, name: str) -> int:
        n = self.find(n)
        info = self.sig.features[name]
        self.constrain(n, info.introducer)
        target = self.features[n].get(name)
        if target is None:
            target = self.features[n][name] = self.new()
            if info.restriction in self.sig.sorts:
                self.constrain(target, info.restriction)
        return target

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            self.parent[b] = a
            self.sorts[a] |= self.sorts[b]
            self.atoms[a].extend(self.atoms[b])
            for name, target in self.features[b].items():
                mine = self.features[a].get(name)
                if mine is None:
                    self.features[a][name] = target
                else:
                    pending.append((mine, target))

    def add_graph(self, graph: FeatureGraph) -> int:
        mapping = {old: self.new() for old in graph.nodes}
        for old, node in graph.nodes.items():
            new = mapping[old]
            self.sorts[new] = set(node.sorts)
            if node.atom is not None:
                self.atoms[new].append(node.atom)
            self.features[new] = {f: mapping[t] for f, t in node.features.items()}
        return mapping[graph.root]

    def freeze(self, root: int) -> Optional[FeatureGraph]:
        nodes: Dict[int, Node] = {}
        stack = [self.find(root)]
        while stack:
            n = stack.pop()
            if n in nodes:
                continue
            atoms = set(self.atoms[n])
            if len(atoms) > 1:
                return None
            if atoms and (self.sorts[n] or self.features[n]):
                return None
            if not compatible(self.sig, self.sorts[n]):
                return None
            features = {f: self.find(t) for f, t in self.features[n].items()}
            nodes[n] = Node(most_specific(self.sig, self.sorts[n]),
                            next(iter(atoms)) if atoms else None, features)
            stack.extend(features.values())
        return FeatureGraph(nodes, self.find(root))


def from_description(description, sig: Signature) -> Optional[FeatureGraph]:
    """Graph of a description built from `<s`, `f!v`, `&`, variables and atoms.

    Returns None when the description is inconsistent.
    """
    builder = _Builder(sig)
    env: Dict[str, int] = {}

    def describe(term, n: int) -> None:
        if isinstance(term, SortRef):
            builder.constrain(n, term.sort)
        elif isinstance(term, FeatVal):
            describe(term.value, builder.feature(n, term.feature))
        elif isinstance(term, Conj):
            describe(term.left, n)
            describe(term.right, n)
        elif isinstance(term, PlainVar):
            if term.name == "_":
                return
            if term.name in env:
                builder.merge(env[term.name], n)
            else:
                env[term.name] = n
        elif isinstance(term, PlainConst):
            builder.set_atom(n, term.value)
        else:
            raise TypeError(f"no graph for {term!r}")

    root = builder.new()
    describe(description, root)
    return builder.freeze(root)


def fs_unify(g1: FeatureGraph, g2: FeatureGraph, sig: Signature) -> Optional[FeatureGraph]:
    """Unify two graphs without touching either; None on failure."""
    builder = _Builder(sig)
    r1 = builder.add_graph(g1)
    r2 = builder.add_graph(g2)
    builder.merge(r1, r2)
    return builder.freeze(r1)


def canonical(graph: FeatureGraph) -> tuple:
    """Isomorphism-invariant form of a graph.

    Edges to nodes that carry nothing and are reached only once are dropped.
    Atoms are values, so an edge to an atom names the atom instead of a node.
    Other nodes are numbered breadth first with features in name order.
    """
    indegree: Dict[int, int] = {}
    for node in graph.nodes.values():
        for target in node.features.values():
            indegree[target] = indegree.get(target, 0) + 1

    def empty(n: int) -> bool:
        node = graph.nodes[n]
        return not node.sorts and node.atom is None and not node.features and indegree.get(n, 0) < 2

    number = {graph.root: 0}
    order = [graph.root]
    result = []
    for n in order:
        node = graph.nodes[n]
        edges = []
        for name in sorted(node.features):
            target = node.features[name]
            if empty(target):
                continue
            if graph.nodes[target].atom is not None:
                edges.append((name, ("atom", graph.nodes[target].atom)))
                continue
            if target not in number:
                number[target] = len(order)
                order.append(target)
            edges.append((name, number[target]))
        result.append((tuple(sorted(node.sorts)), node.atom, tuple(edges)))
    return tuple(result)
