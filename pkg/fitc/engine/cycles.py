"""Print-time occur check."""

from typing import Callable, Hashable, List, Optional, Set, Tuple

from .store import BindingStore
from .terms import Compound, Term

Position = Tuple[int, ...]


def find_cycles(term: Term, store: BindingStore,
                key: Optional[Callable[[Compound], Hashable]] = None) -> Set[Position]:
    """Argument positions at which `term` re-enters one of its own ancestors.

    A position is the sequence of argument indices leading from the root to
    the re-entering argument. Only the first re-entry along each path is
    reported. Shared but acyclic subterms produce nothing. `key` decides when
    two compounds are the same node; object identity by default.
    """
    node_key = key or id
    entries: Set[Position] = set()
    acyclic: Set[Hashable] = set()
    on_path: Set[Hashable] = set()

    # one frame per compound on the current path: [key, term, position, next arg, found]
    frames: List[list] = []

    def enter(t: Term, position: Position) -> bool:
        t = store.deref(t)
        if not isinstance(t, Compound):
            return False
        k = node_key(t)
        if k in on_path:
            entries.add(position)
            return True
        if k not in acyclic:
            on_path.add(k)
            frames.append([k, t, position, 0, False])
        return False

    enter(term, ())
    while frames:
        frame = frames[-1]
        k, t, position, index, _ = frame
        if index < len(t.args):
            frame[3] = index + 1
            if enter(t.args[index], position + (index,)):
                frame[4] = True
            continue
        frames.pop()
        on_path.discard(k)
        if frame[4]:
            if frames:
                frames[-1][4] = True
        else:
            acyclic.add(k)
    return entries


def is_cyclic(term: Term, store: BindingStore) -> bool:
    return bool(find_cycles(term, store))
