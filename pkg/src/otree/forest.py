"""Ordered colored rooted trees and forests.

A tree is an immutable ``Tree(color, children)`` where ``children`` is a
forest; a forest is a plain tuple of trees.  The empty tuple is the unit
forest.  Everything here is a pure function over these immutable values.

Grammar used by :func:`parse_forest` and :func:`print_forest`::

    forest := ws (tree ws)*
    tree   := color? '(' forest ')'
    color  := [A-Za-z0-9_]+        (omitted means "0")
    ws     := spaces / tabs
"""

from __future__ import annotations

import contextlib
import gc
import itertools
import math
import os
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

DEFAULT_COLOR = "0"
# Never produced by the parser; marks the invisible root used by the GL
# product and by full admissible cuts.
HIDDEN_COLOR = "*"
DEFAULT_MAX_ORDER = 10
FILTERS = ("all", "trees", "tall", "bushy")


class ForestSyntaxError(ValueError):
    """Raised by :func:`parse_forest`; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class OrderBoundError(ValueError):
    pass


class Tree(NamedTuple):
    color: str
    children: tuple  # tuple[Tree, ...]

    def __repr__(self):
        return f"Tree({print_forest((self,))!r})"


Forest = tuple  # tuple[Tree, ...]
EMPTY: Forest = ()


def max_order_bound() -> int:
    """Enumeration bound, overridable through ``OTREE_MAX_ORDER``."""
    value = os.environ.get("OTREE_MAX_ORDER")
    if value is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(value)
    except ValueError:
        raise OrderBoundError(f"OTREE_MAX_ORDER must be an integer, got {value!r}") from None


def check_bound(n: int, bound: int | None = None) -> None:
    limit = max_order_bound() if bound is None else bound
    if n > limit:
        raise OrderBoundError(f"order {n} exceeds the configured bound {limit}")


# --------------------------------------------------------------------------
# Parsing and printing
# --------------------------------------------------------------------------

def _is_color_char(ch: str) -> bool:
    return ch == "_" or ("0" <= ch <= "9") or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def parse_forest(text: str) -> Forest:
    """Parse a forest written in the bracket grammar.

    >>> print_forest(parse_forest("a(b() a())"))
    'a(b()a())'
    """
    # stack of (color, children-so-far, offset of the opening bracket)
    stack: list[tuple[str, list, int]] = []
    top: list = []
    i, n = 0, len(text)

    def offset(k: int) -> int:
        return len(text[:k].encode("utf-8"))

    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
        elif ch == "(" or _is_color_char(ch):
            start = i
            while i < n and _is_color_char(text[i]):
                i += 1
            color = text[start:i] or DEFAULT_COLOR
            if i >= n or text[i] != "(":
                raise ForestSyntaxError("expected '(' after color token", offset(i))
            stack.append((color, top, offset(start)))
            top = []
            i += 1
        elif ch == ")":
            if not stack:
                raise ForestSyntaxError("unbalanced ')'", offset(i))
            color, parent, _ = stack.pop()
            parent.append(Tree(color, tuple(top)))
            top = parent
            i += 1
        else:
            raise ForestSyntaxError(f"unexpected character {ch!r}", offset(i))
    if stack:
        raise ForestSyntaxError("unclosed '('", stack[-1][2])
    return tuple(top)


def parse_tree(text: str) -> Tree:
    f = parse_forest(text)
    if len(f) != 1:
        raise ForestSyntaxError(f"expected exactly one tree, found {len(f)}", 0)
    return f[0]


def _canonical_str(f: Forest) -> str:
    parts = []
    for t in f:
        if t.color != DEFAULT_COLOR:
            parts.append(t.color)
        parts.append("(")
        parts.append(_canonical_str(t.children))
        parts.append(")")
    return "".join(parts)


def _latex_tree(t: Tree) -> str:
    sub = "" if t.color == DEFAULT_COLOR else f"_{{{t.color}}}"
    if not t.children:
        return r"\bullet" + sub
    return "[" + r"\,".join(_latex_tree(c) for c in t.children) + "]" + sub


def print_forest(f: Forest, style: str = "canonical") -> str:
    """Render a forest; ``style`` is ``"canonical"`` or ``"latex"``.

    The latex form is Butcher's bracket notation: a leaf is ``\\bullet`` and
    a tree with children is ``[c1\\,c2]``; non-default colors become
    subscripts.  The empty forest is ``""`` canonically and ``\\mathbb{1}``
    in latex.
    """
    if style == "canonical":
        return _canonical_str(f)
    if style == "latex":
        if not f:
            return r"\mathbb{1}"
        return r"\,".join(_latex_tree(t) for t in f)
    raise ValueError(f"unknown style {style!r}")


# --------------------------------------------------------------------------
# Construction and grading
# --------------------------------------------------------------------------

def b_plus(f: Forest, color: str = DEFAULT_COLOR) -> Tree:
    return Tree(color, tuple(f))


def b_minus(f: Forest) -> Forest:
    """Replace every tree by the forest of its children."""
    return tuple(c for t in f for c in t.children)


@lru_cache(maxsize=None)
def tree_order(t: Tree) -> int:
    return 1 + sum(tree_order(c) for c in t.children)


def order(f: Forest) -> int:
    return sum(tree_order(t) for t in f)


def degree(f: Forest) -> int:
    return len(f)


def height(t: Tree) -> int:
    return 1 + max((height(c) for c in t.children), default=0)


def is_tall(t: Tree) -> bool:
    while t.children:
        if len(t.children) > 1:
            return False
        t = t.children[0]
    return True


def is_bushy(t: Tree) -> bool:
    return all(not c.children for c in t.children)


# --------------------------------------------------------------------------
# Canonical order
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def tree_key(t: Tree) -> tuple:
    """Sort key of the canonical total order: (order, color, children...)."""
    return (tree_order(t), t.color, tuple(tree_key(c) for c in t.children))


def forest_key(f: Forest) -> tuple:
    return tuple(tree_key(t) for t in f)


def sort_forests(forests: Iterable[Forest]) -> list[Forest]:
    return sorted(forests, key=lambda f: (order(f), forest_key(f)))


@lru_cache(maxsize=None)
def canonical_tree(t: Tree) -> Tree:
    return Tree(t.color, canonical(t.children))


def canonical(f: Forest) -> Forest:
    """Minimal representative of the class of ``f`` under branch/tree permutation."""
    return tuple(sorted((canonical_tree(t) for t in f), key=tree_key))


def forget(f: Forest) -> Forest:
    return canonical(f)


def equivalent(f1: Forest, f2: Forest) -> bool:
    return canonical(f1) == canonical(f2)


# --------------------------------------------------------------------------
# Enumeration
# --------------------------------------------------------------------------

def _forests_of_order(n: int, colors: tuple[str, ...], cache: dict) -> list[Forest]:
    if n in cache:
        return cache[n]
    out: list[Forest] = []
    for k in range(1, n + 1):
        rests = _forests_of_order(n - k, colors, cache)
        for t in _trees_of_order(k, colors, cache):
            head = (t,)
            out.extend([head + r for r in rests])
    cache[n] = out
    return out


def _trees_of_order(k: int, colors: tuple[str, ...], cache: dict) -> list[Tree]:
    subs = _forests_of_order(k - 1, colors, cache)
    return [Tree(c, f) for c in colors for f in subs]


def iter_forests(n: int, colors: Sequence[str] = (DEFAULT_COLOR,)) -> Iterator[Forest]:
    """Yield every forest with exactly ``n`` nodes in canonical order.

    Streams the top level so that counting large enumerations does not hold
    them in memory; smaller orders are built once per call.
    """
    cols = tuple(sorted(set(colors)))
    cache: dict = {0: [EMPTY]}
    if n == 0:
        yield EMPTY
        return
    for k in range(1, n + 1):
        rests = _forests_of_order(n - k, cols, cache)
        subs = _forests_of_order(k - 1, cols, cache)
        for c in cols:
            for sub in subs:
                head = (Tree(c, sub),)
                for r in rests:
                    yield head + r


@contextlib.contextmanager
def _gc_paused():
    # Enumeration allocates millions of acyclic tuples; cyclic GC passes
    # triggered by them cost more than the enumeration itself.
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def _keep(f: Forest, kind: str) -> bool:
    if kind == "all":
        return True
    if kind == "trees":
        return len(f) == 1
    if kind == "tall":
        return all(is_tall(t) for t in f)
    if kind == "bushy":
        return all(is_bushy(t) for t in f)
    raise ValueError(f"unknown filter {kind!r}; expected one of {FILTERS}")


def enumerate_forests(
    n: int,
    colors: Sequence[str] = (DEFAULT_COLOR,),
    filter: str = "all",
    bound: int | None = None,
) -> list[Forest]:
    """All distinct forests with exactly ``n`` nodes, canonically ordered."""
    if n < 0:
        raise ValueError("order must be non-negative")
    check_bound(n, bound)
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    with _gc_paused():
        if filter == "all":
            return list(iter_forests(n, colors))
        return [f for f in iter_forests(n, colors) if _keep(f, filter)]


def forests_up_to(n: int, colors: Sequence[str] = (DEFAULT_COLOR,), filter: str = "all") -> list[Forest]:
    return [f for k in range(n + 1) for f in enumerate_forests(k, colors, filter)]


def catalan_count(n: int, colors: int = 1) -> int:
    return colors**n * math.comb(2 * n, n) // (n + 1)


# --------------------------------------------------------------------------
# Symmetry
# --------------------------------------------------------------------------

def _multiplicity_factor(f: Forest) -> int:
    counts = Counter(canonical_tree(t) for t in f)
    return math.prod(math.factorial(m) for m in counts.values())


@lru_cache(maxsize=None)
def _sigma_tree(t: Tree) -> int:
    return sigma(t.children)


def sigma(f: Forest) -> int:
    """Size of the stabiliser of ``f`` under branch and tree permutations."""
    return math.prod(_sigma_tree(t) for t in f) * _multiplicity_factor(f)


@lru_cache(maxsize=None)
def _pi_tree(t: Tree) -> int:
    return pi(t.children)


def pi(f: Forest) -> int:
    """Total number of branch/tree permutations acting on ``f``."""
    return math.factorial(len(f)) * math.prod(_pi_tree(t) for t in f)


def orbit(f: Forest) -> set[Forest]:
    """All forests equivalent to ``f`` (brute force, small inputs only)."""
    tree_orbits = [_tree_orbit(t) for t in f]
    out: set[Forest] = set()
    for perm in set(itertools.permutations(range(len(f)))):
        for choice in itertools.product(*(tree_orbits[i] for i in perm)):
            out.add(choice)
    return out


@lru_cache(maxsize=None)
def _tree_orbit(t: Tree) -> frozenset:
    return frozenset(Tree(t.color, sub) for sub in orbit(t.children))
