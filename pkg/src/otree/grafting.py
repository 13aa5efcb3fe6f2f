"""Left grafting and the Grossman–Larson product.

``graft`` follows the defining recursions (a derivation on concatenation,
split over B⁺ for trees, and the commutator rule for forests acting as
grafters).  ``graft_direct`` builds the same sum by explicitly attaching
each grafted tree as the new first child of a node; the two are kept apart
so each can check the other.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .forest import HIDDEN_COLOR, Forest, Tree, order
from .lincomb import LinComb


@lru_cache(maxsize=1 << 15)
def _tree_on_forest(t: Tree, target: Forest) -> dict:
    # t[𝟙] = 0 ; t[ω ω̃] = t[ω] ω̃ + ω t[ω̃]
    if not target:
        return {}
    out: dict = defaultdict(int)
    first, rest = target[0], target[1:]
    for f, c in _tree_on_tree(t, first).items():
        out[f + rest] += c
    for f, c in _tree_on_forest(t, rest).items():
        out[(first,) + f] += c
    return dict(out)


@lru_cache(maxsize=1 << 15)
def _tree_on_tree(t: Tree, target: Tree) -> dict:
    # t[B⁺ᵢ(ω)] = B⁺ᵢ(t[ω]) + B⁺ᵢ(t ω)
    out: dict = defaultdict(int)
    for f, c in _tree_on_forest(t, target.children).items():
        out[(Tree(target.color, f),)] += c
    out[(Tree(target.color, (t,) + target.children),)] += 1
    return dict(out)


@lru_cache(maxsize=1 << 15)
def _forest_on_forest(w: Forest, target: Forest) -> dict:
    # 𝟙[a] = a ; (τω)[a] = τ[ω[a]] - (τ[ω])[a]
    if not w:
        return {target: 1}
    t, rest = w[0], w[1:]
    out: dict = defaultdict(int)
    for f, c in _forest_on_forest(rest, target).items():
        for g, d in _tree_on_forest(t, f).items():
            out[g] += c * d
    for f, c in _tree_on_forest(t, rest).items():
        for g, d in _forest_on_forest(f, target).items():
            out[g] -= c * d
    return {k: v for k, v in out.items() if v}


def graft(a: LinComb, b: LinComb, max_order: int | None = None) -> LinComb:
    """Left grafting a[b], bilinear."""
    data: dict = defaultdict(int)
    for w, c in a.raw_items():
        for x, d in b.raw_items():
            if max_order is not None and order(w) + order(x) > max_order:
                continue
            for f, e in _forest_on_forest(w, x).items():
                data[f] += c * d * e
    return LinComb._raw(data)


@dataclass(frozen=True)
class GraftResult:
    value: LinComb
    term_count: int  # words produced before like terms are collected


def _attach(target: Forest, assignment: dict, counter: list) -> Forest:
    # Rebuild target, prefixing the trees assigned to each node (pre-order index).
    out = []
    for t in target:
        idx = counter[0]
        counter[0] += 1
        children = _attach(t.children, assignment, counter)
        out.append(Tree(t.color, tuple(assignment.get(idx, ())) + children))
    return tuple(out)


def graft_direct_result(w: Forest, target: Forest) -> GraftResult:
    """Attach the trees of ``w`` (last one first) to the left side of nodes of ``target``.

    Every tree of ``w`` goes to a node that was originally in ``target``,
    so there are ``|target| ** len(w)`` words in total.
    """
    n = order(target)
    data: dict = defaultdict(int)
    count = 0
    for nodes in itertools.product(range(n), repeat=len(w)):
        assignment: dict = defaultdict(list)
        # j = k, k-1, ..., 1: each later attachment lands left of the earlier ones
        for j in reversed(range(len(w))):
            assignment[nodes[j]].insert(0, w[j])
        data[_attach(target, assignment, [0])] += 1
        count += 1
    return GraftResult(LinComb._raw(data), count)


def graft_direct(w: Forest, target: Forest) -> LinComb:
    return graft_direct_result(w, target).value


def gl_product(a: LinComb, b: LinComb, max_order: int | None = None) -> LinComb:
    """Grossman–Larson product: graft onto B⁺(b) with an invisible root, then drop it."""
    data: dict = defaultdict(int)
    for w, c in a.raw_items():
        for x, d in b.raw_items():
            if max_order is not None and order(w) + order(x) > max_order:
                continue
            rooted = (Tree(HIDDEN_COLOR, x),)
            for f, e in _forest_on_forest(w, rooted).items():
                (root,) = f
                data[root.children] += c * d * e
    return LinComb._raw(data)


def gl_direct(w: Forest, x: Forest) -> GraftResult:
    """GL product of two forests via explicit attachment; counts (|x|+1)^#w words."""
    res = graft_direct_result(w, (Tree(HIDDEN_COLOR, x),))
    data = {f[0].children: c for f, c in res.value.raw_items()}
    return GraftResult(LinComb._raw(data), res.term_count)
