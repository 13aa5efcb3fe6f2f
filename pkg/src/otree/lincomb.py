"""Finite linear combinations of forests (elements of N) and of forest pairs.

Coefficients are exact: Python ``int`` or :class:`fractions.Fraction`.
Floats are rejected.  Zero coefficients are never stored, and iteration is
always in the canonical forest order so that printed output is stable.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping

from .forest import EMPTY, Forest, ForestSyntaxError, forest_key, order, parse_forest, print_forest

Coeff = Rational  # int or Fraction
UNIT_SYMBOL = "𝟙"


def _coerce(c) -> Rational:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _forest_sort_key(f: Forest) -> tuple:
    return (order(f), forest_key(f))


class _Comb:
    """Shared vector-space arithmetic; subclasses fix the key type."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        data: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k = self._normalize_key(k)
                data[k] = data.get(k, 0) + _coerce(c)
        self._terms = {k: v for k, v in data.items() if v != 0}

    @classmethod
    def _normalize_key(cls, k):
        return k

    @classmethod
    def _raw(cls, data: dict):
        # Trusted constructor: keys already normalized, coefficients exact.
        obj = cls.__new__(cls)
        obj._terms = {k: (v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v)
                      for k, v in data.items() if v != 0}
        return obj

    def _sort_key(self, k):
        raise NotImplementedError

    def __getitem__(self, k) -> Rational:
        return self._terms.get(self._normalize_key(k), 0)

    def __contains__(self, k) -> bool:
        return self._normalize_key(k) in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def keys(self) -> list:
        return sorted(self._terms, key=self._sort_key)

    def items(self) -> list[tuple]:
        return [(k, self._terms[k]) for k in self.keys()]

    def __iter__(self) -> Iterator:
        return iter(self.keys())

    def raw_items(self):
        """Unordered items; cheaper than :meth:`items` for internal loops."""
        return self._terms.items()

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, _Comb):
            return NotImplemented
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        data = dict(self._terms)
        for k, v in other._terms.items():
            data[k] = data.get(k, 0) + v
        return self._raw(data)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _coerce(scalar)
        return self._raw({k: v * scalar for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / _coerce(scalar))

    def map_coeffs(self, fn: Callable):
        return self._raw({k: _coerce(fn(v)) for k, v in self._terms.items()})

    def filter(self, pred: Callable):
        return self._raw({k: v for k, v in self._terms.items() if pred(k)})


class LinComb(_Comb):
    """An element of N: a finite map from forests to exact rationals."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, k):
        return tuple(k)

    def _sort_key(self, k):
        return _forest_sort_key(k)

    @classmethod
    def of(cls, f: Forest, coeff: Rational = 1) -> "LinComb":
        return cls({f: coeff})

    def truncate(self, max_order: int) -> "LinComb":
        return self.filter(lambda f: order(f) <= max_order)

    def homogeneous(self, n: int) -> "LinComb":
        return self.filter(lambda f: order(f) == n)

    def __str__(self) -> str:
        return format_lincomb(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_lincomb(self)!r})"


class TensorComb(_Comb):
    """An element of N⊗N keyed by ``(left, right)`` forest pairs."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, k):
        left, right = k
        return (tuple(left), tuple(right))

    def _sort_key(self, k):
        return (_forest_sort_key(k[0]), _forest_sort_key(k[1]))

    def __str__(self) -> str:
        return format_tensor(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_tensor(self)!r})"


ZERO = LinComb()
ONE = LinComb({EMPTY: 1})


def lc(x) -> LinComb:
    """Coerce a forest, forest string or LinComb into a LinComb."""
    if isinstance(x, LinComb):
        return x
    if isinstance(x, str):
        return LinComb({parse_forest(x): 1})
    return LinComb({tuple(x): 1})


def tensor(a: LinComb, b: LinComb) -> TensorComb:
    """Elementary tensor a⊗b."""
    data: dict = {}
    for f, c in a.raw_items():
        for g, d in b.raw_items():
            data[(f, g)] = c * d
    return TensorComb._raw(data)


# --------------------------------------------------------------------------
# Products
# --------------------------------------------------------------------------

def inner(a: LinComb, b: LinComb) -> Rational:
    if len(b) < len(a):
        a, b = b, a
    return sum((c * b[f] for f, c in a.raw_items()), 0)


def _within(f: Forest, g: Forest, max_order: int | None) -> bool:
    return max_order is None or order(f) + order(g) <= max_order


def concat(a: LinComb, b: LinComb, max_order: int | None = None) -> LinComb:
    data: dict = defaultdict(int)
    for f, c in a.raw_items():
        for g, d in b.raw_items():
            if _within(f, g, max_order):
                data[f + g] += c * d
    return LinComb._raw(data)


@lru_cache(maxsize=1 << 16)
def shuffle_words(u: Forest, v: Forest) -> tuple[tuple[Forest, int], ...]:
    """All interleavings of two words, collected with multiplicities."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    m, total = len(u), len(u) + len(v)
    counts: dict = defaultdict(int)
    for slots in itertools.combinations(range(total), m):
        word = [None] * total
        ui = iter(u)
        for s in slots:
            word[s] = next(ui)
        vi = iter(v)
        for i in range(total):
            if word[i] is None:
                word[i] = next(vi)
        counts[tuple(word)] += 1
    return tuple(counts.items())


def shuffle(a: LinComb, b: LinComb, max_order: int | None = None) -> LinComb:
    data: dict = defaultdict(int)
    for f, c in a.raw_items():
        for g, d in b.raw_items():
            if not _within(f, g, max_order):
                continue
            cd = c * d
            for w, m in shuffle_words(f, g):
                data[w] += cd * m
    return LinComb._raw(data)


def sqcup_cdot(x: TensorComb, y: TensorComb) -> TensorComb:
    """(ω₁⊗τ₁)(ω₂⊗τ₂) ↦ (ω₁⧢ω₂)⊗(τ₁τ₂): shuffle on the left, concatenate on the right."""
    data: dict = defaultdict(int)
    for (l1, r1), c in x.raw_items():
        for (l2, r2), d in y.raw_items():
            right = r1 + r2
            cd = c * d
            for w, m in shuffle_words(l1, l2):
                data[(w, right)] += cd * m
    return TensorComb._raw(data)


def spr(x: TensorComb, y: TensorComb) -> TensorComb:
    """Shuffle in both tensor slots."""
    data: dict = defaultdict(int)
    for (l1, r1), c in x.raw_items():
        for (l2, r2), d in y.raw_items():
            cd = c * d
            rights = shuffle_words(r1, r2)
            for wl, ml in shuffle_words(l1, l2):
                for wr, mr in rights:
                    data[(wl, wr)] += cd * ml * mr
    return TensorComb._raw(data)


def twist(x: TensorComb) -> TensorComb:
    return TensorComb._raw({(r, l): c for (l, r), c in x.raw_items()})


def linear(fn: Callable[[Forest], LinComb]) -> Callable[[LinComb], LinComb]:
    """Extend a map defined on single forests to a linear map on LinComb."""

    def apply(a: LinComb) -> LinComb:
        data: dict = defaultdict(int)
        for f, c in a.raw_items():
            for g, d in fn(f).raw_items():
                data[g] += c * d
        return LinComb._raw(data)

    apply.__name__ = getattr(fn, "__name__", "linear")
    return apply


def tensor_map(left: Callable[[LinComb], LinComb], right: Callable[[LinComb], LinComb], x: TensorComb) -> TensorComb:
    """(A⊗B)(x) for linear maps A, B."""
    data: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        for f, a in left(LinComb._raw({l: 1})).raw_items():
            for g, b in right(LinComb._raw({r: 1})).raw_items():
                data[(f, g)] += c * a * b
    return TensorComb._raw(data)


def mu_shuffle(x: TensorComb) -> LinComb:
    """Multiply the two slots with the shuffle product."""
    data: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        for w, m in shuffle_words(l, r):
            data[w] += c * m
    return LinComb._raw(data)


def pair(x: TensorComb, a: LinComb, b: LinComb) -> Rational:
    """⟨a⊗b, x⟩."""
    return sum((c * a[l] * b[r] for (l, r), c in x.raw_items()), 0)


# --------------------------------------------------------------------------
# Text and JSON forms
# --------------------------------------------------------------------------

def format_coeff(c: Rational) -> str:
    return str(Fraction(c))


def _forest_text(f: Forest, style: str) -> str:
    if style == "latex":
        return print_forest(f, "latex")
    return print_forest(f) if f else UNIT_SYMBOL


def _format_terms(pairs: list[tuple[str, Rational]], style: str) -> str:
    if not pairs:
        return "0"
    dot = r"\," if style == "latex" else "·"
    out = []
    for i, (body, c) in enumerate(pairs):
        mag = abs(c)
        text = body if mag == 1 else f"{format_coeff(mag)}{dot}{body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def format_lincomb(a: LinComb, style: str = "text") -> str:
    """``"()() + (())"``; coefficients other than ±1 prefix their term as ``p/q·``."""
    return _format_terms([(_forest_text(f, style), c) for f, c in a.items()], style)


def format_tensor(x: TensorComb, style: str = "text") -> str:
    sep = r" \otimes " if style == "latex" else " ⊗ "
    return _format_terms(
        [(_forest_text(l, style) + sep + _forest_text(r, style), c) for (l, r), c in x.items()], style
    )


def lincomb_to_json(a: LinComb) -> list[dict]:
    return [{"coeff": format_coeff(c), "forest": print_forest(f)} for f, c in a.items()]


def tensor_to_json(x: TensorComb) -> list[dict]:
    return [
        {"coeff": format_coeff(c), "left": print_forest(l), "right": print_forest(r)}
        for (l, r), c in x.items()
    ]


def lincomb_from_json(data: list[dict], cls=LinComb) -> LinComb:
    return cls((parse_forest(t["forest"]), Fraction(t["coeff"])) for t in data)


def tensor_from_json(data: list[dict], cls=TensorComb) -> TensorComb:
    return cls(((parse_forest(t["left"]), parse_forest(t["right"])), Fraction(t["coeff"])) for t in data)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]*)")
_COEFF = re.compile(r"(\d+(?:/\d+)?)\s*(?:[·*]\s*(.*))?$", re.S)


def parse_lincomb(text: str) -> LinComb:
    """Inverse of the text format; also accepts ``*`` for ``·`` and ``1`` for the unit.

    A bare forest string (including ``""``, the empty forest) is a single term.
    """
    if not text.strip():
        return ONE
    terms: dict = defaultdict(int)
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, body = m.group(1), m.group(2)
        body_start = m.start(2)
        if not first and sign is None:
            raise ForestSyntaxError("expected '+' or '-'", len(text[:pos].encode()))
        if not body.strip():
            raise ForestSyntaxError("empty term", len(text[:body_start].encode()))
        coeff: Rational = 1
        forest_text = body
        forest_start = body_start
        cm = _COEFF.match(body.strip())
        if cm:
            coeff = Fraction(cm.group(1))
            forest_text = cm.group(2) or ""
            forest_start = body_start + (body.find(forest_text) if forest_text else 0)
            if cm.group(2) is None:
                forest_text = UNIT_SYMBOL
        stripped = forest_text.strip()
        if stripped in (UNIT_SYMBOL, "1", ""):
            forest: Forest = EMPTY
        else:
            try:
                forest = parse_forest(forest_text)
            except ForestSyntaxError as exc:
                raise ForestSyntaxError(
                    str(exc).rsplit(" at byte", 1)[0],
                    len(text[:forest_start].encode()) + exc.offset,
                ) from None
        if sign == "-":
            coeff = -coeff
        terms[forest] += coeff
        pos = m.end()
        first = False
    return LinComb(terms)
