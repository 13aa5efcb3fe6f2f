"""Left cuts of forests.

A node is addressed by its structural path: ``(i,)`` is the root of the
i-th tree, ``(i, j)`` the j-th child of that root, and so on.  The empty
address ``()`` is the invisible root sitting below the whole forest, whose
children are the trees; nodal cuts there are what full admissible cuts and
word cuts add on top of ordinary left cuts.

Families:

* ``nlc``  - a single nodal cut at a real node
* ``lc``   - any set of nodal cuts at distinct real nodes (includes the empty cut)
* ``alc``  - left cuts severing every root path at most once
* ``falc`` - admissible cuts where the invisible root may also be cut
* ``wc``   - cuts at the invisible root only (splitting the word in two)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .forest import Forest, Tree, check_bound, order, print_forest
from .lincomb import ONE, LinComb, shuffle

FAMILIES = ("nlc", "lc", "alc", "falc", "wc")

Address = tuple  # tuple[int, ...]


class CutError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NodalCut:
    """Sever the ``count`` leftmost children of the node at ``node``."""

    node: Address
    count: int


def _is_admissible(nodal: tuple[NodalCut, ...]) -> bool:
    for a in nodal:
        for b in nodal:
            if a is b:
                continue
            # b sits inside a subtree cut off by a
            p = len(a.node)
            if len(b.node) > p and b.node[:p] == a.node and b.node[p] < a.count:
                return False
    return True


@dataclass(frozen=True)
class Cut:
    nodal_cuts: tuple[NodalCut, ...]
    is_admissible: bool = field(compare=False)
    is_full: bool = field(compare=False)  # uses the invisible root
    is_word: bool = field(compare=False)  # uses nothing but the invisible root

    @classmethod
    def of(cls, nodal) -> "Cut":
        nodal = tuple(sorted(nodal))
        nodes = [n.node for n in nodal]
        if len(set(nodes)) != len(nodes):
            raise CutError("nodal cuts must sit at distinct nodes")
        if any(n.count <= 0 for n in nodal):
            raise CutError("nodal cut counts must be positive")
        full = any(n.node == () for n in nodal)
        word = all(n.node == () for n in nodal)
        return cls(nodal, _is_admissible(nodal), full, word)

    @property
    def is_empty(self) -> bool:
        return not self.nodal_cuts

    def kinds(self) -> frozenset[str]:
        out = set()
        if not self.is_full:
            out.add("lc")
            if self.is_admissible:
                out.add("alc")
            if len(self.nodal_cuts) == 1:
                out.add("nlc")
        if self.is_admissible:
            out.add("falc")
        if self.is_word:
            out.add("wc")
        return frozenset(out)

    def sort_key(self) -> tuple:
        return tuple((n.node, n.count) for n in self.nodal_cuts)

    def __str__(self) -> str:
        if not self.nodal_cuts:
            return "{}"
        return "{" + ", ".join(f"{'.'.join(map(str, n.node)) or '*'}:{n.count}" for n in self.nodal_cuts) + "}"


EMPTY_CUT = Cut.of(())


@dataclass(frozen=True)
class CutResult:
    cut_part: LinComb  # shuffle of the severed sub-forests
    remainder: Forest  # nodes still connected to the roots
    pieces: tuple[Forest, ...] = ()


def _parents(children: tuple[Tree, ...], addr: Address) -> Iterator[tuple[Address, int]]:
    for j, t in enumerate(children):
        a = addr + (j,)
        if t.children:
            yield a, len(t.children)
        yield from _parents(t.children, a)


def _admissible_sets(children: tuple[Tree, ...], addr: Address) -> list[tuple[NodalCut, ...]]:
    """Admissible cut sets below a node whose children are ``children``, cutting at ``addr`` too."""
    out = []
    for c in range(len(children) + 1):
        own = (NodalCut(addr, c),) if c else ()
        below = [
            _admissible_sets(children[j].children, addr + (j,)) for j in range(c, len(children))
        ]
        for combo in itertools.product(*below):
            out.append(own + tuple(n for part in combo for n in part))
    return out


def _real_admissible_sets(f: Forest) -> list[tuple[NodalCut, ...]]:
    below = [_admissible_sets(t.children, (j,)) for j, t in enumerate(f)]
    return [tuple(n for part in combo for n in part) for combo in itertools.product(*below)]


def left_cuts(f: Forest, family: str = "lc", bound: int | None = None) -> list[Cut]:
    """Enumerate one cut family of ``f`` without duplicates, in address order."""
    check_bound(order(f), bound)
    if family == "lc":
        parents = list(_parents(f, ()))
        sets = [
            tuple(NodalCut(a, c) for (a, _), c in zip(parents, counts) if c)
            for counts in itertools.product(*(range(k + 1) for _, k in parents))
        ]
    elif family == "nlc":
        sets = [(NodalCut(a, c),) for a, k in _parents(f, ()) for c in range(1, k + 1)]
    elif family == "alc":
        sets = _real_admissible_sets(f)
    elif family == "falc":
        sets = _admissible_sets(f, ())
    elif family == "wc":
        sets = [(NodalCut((), c),) if c else () for c in range(len(f) + 1)]
    elif family == "all":
        union = {c for fam in ("lc", "falc") for c in left_cuts(f, fam, bound)}
        return sorted(union, key=Cut.sort_key)
    else:
        raise ValueError(f"unknown cut family {family!r}; expected one of {FAMILIES}")
    return sorted((Cut.of(s) for s in sets), key=Cut.sort_key)


def nodal_left_cuts(f: Forest) -> list[Cut]:
    return left_cuts(f, "nlc")


def admissible_left_cuts(f: Forest) -> list[Cut]:
    return left_cuts(f, "alc")


def full_admissible_left_cuts(f: Forest) -> list[Cut]:
    return left_cuts(f, "falc")


def word_cuts(f: Forest) -> list[Cut]:
    return left_cuts(f, "wc")


def _resolve(f: Forest, addr: Address) -> tuple[Tree, ...]:
    children = f
    for j in addr:
        if not 0 <= j < len(children):
            raise CutError(f"address {addr} does not exist in {print_forest(f)!r}")
        children = children[j].children
    return children


def apply_cut(f: Forest, cut: Cut) -> CutResult:
    """Split ``f`` into the shuffle of its severed parts and the rooted remainder."""
    counts = {}
    for n in cut.nodal_cuts:
        if n.count > len(_resolve(f, n.node)):
            raise CutError(f"node {n.node} has fewer than {n.count} children")
        counts[n.node] = n.count
    pieces: list[Forest] = []

    def walk(children: tuple[Tree, ...], addr: Address) -> Forest:
        c = counts.get(addr, 0)
        severed, kept = [], []
        for j, t in enumerate(children):
            rebuilt = Tree(t.color, walk(t.children, addr + (j,)))
            (severed if j < c else kept).append(rebuilt)
        if c:
            pieces.append(tuple(severed))
        return tuple(kept)

    remainder = walk(f, ())
    part = ONE
    for p in pieces:
        part = shuffle(part, LinComb._raw({p: 1}))
    return CutResult(part, remainder, tuple(pieces))


def cut_table(f: Forest, family: str = "all") -> list[tuple[int, Cut, CutResult]]:
    return [(i, c, apply_cut(f, c)) for i, c in enumerate(left_cuts(f, family))]


__all__ = [
    "FAMILIES",
    "EMPTY_CUT",
    "Cut",
    "CutError",
    "CutResult",
    "NodalCut",
    "admissible_left_cuts",
    "apply_cut",
    "cut_table",
    "full_admissible_left_cuts",
    "left_cuts",
    "nodal_left_cuts",
    "word_cuts",
]
