"""Truncated series: functionals on ordered forests up to a cutoff order.

A :class:`Series` stores the coefficient ``alpha(w)`` of every forest ``w``
with ``order(w) <= cutoff``; absent forests have coefficient zero.  The
group operation is GL composition, evaluated through the coproduct.
"""

from __future__ import annotations

import json
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .forest import (
    DEFAULT_COLOR,
    EMPTY,
    Forest,
    forests_up_to,
    order,
    parse_forest,
    print_forest,
    sort_forests,
    tree_key,
)
from .hopf import _coproduct_cuts, antipode_N
from .lincomb import LinComb, Rational, _coerce, format_coeff, lincomb_to_json, shuffle_words


class SeriesError(ValueError):
    pass


def _colors_of(f: Forest, into: set) -> None:
    for t in f:
        into.add(t.color)
        _colors_of(t.children, into)


@dataclass(frozen=True)
class Series:
    cutoff: int
    coeffs: dict = field(default_factory=dict)
    colors: tuple = ()

    def __post_init__(self):
        if self.cutoff < 0:
            raise SeriesError("cutoff must be non-negative")
        clean = {}
        seen = set(self.colors)
        for f, c in self.coeffs.items():
            f = tuple(f)
            if order(f) > self.cutoff:
                raise SeriesError(f"forest {print_forest(f)!r} exceeds cutoff {self.cutoff}")
            c = _coerce(c)
            if c != 0:
                clean[f] = c
                _colors_of(f, seen)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "colors", tuple(sorted(seen or {DEFAULT_COLOR})))

    # -- access -------------------------------------------------------------

    def __getitem__(self, f: Forest) -> Rational:
        return self.coeffs.get(tuple(f), 0)

    def __call__(self, f: Forest) -> Rational:
        return self[f]

    def pair(self, a: LinComb) -> Rational:
        """⟨α, a⟩, ignoring terms above the cutoff."""
        return sum((c * self.coeffs.get(f, 0) for f, c in a.raw_items()), 0)

    def forests(self) -> list[Forest]:
        """Every forest this series is defined on."""
        return _forests(self.cutoff, self.colors)

    def support(self) -> list[Forest]:
        return sort_forests(self.coeffs)

    def truncate(self, k: int) -> "Series":
        return Series(k, {f: c for f, c in self.coeffs.items() if order(f) <= k}, self.colors)

    # -- vector space -------------------------------------------------------

    def _check(self, other: "Series") -> tuple:
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if other.cutoff != self.cutoff:
            raise SeriesError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")
        return tuple(sorted(set(self.colors) | set(other.colors)))

    def __add__(self, other: "Series") -> "Series":
        colors = self._check(other)
        data = defaultdict(int, self.coeffs)
        for f, c in other.coeffs.items():
            data[f] += c
        return Series(self.cutoff, data, colors)

    def __neg__(self) -> "Series":
        return Series(self.cutoff, {f: -c for f, c in self.coeffs.items()}, self.colors)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, scalar) -> "Series":
        scalar = _coerce(scalar)
        return Series(self.cutoff, {f: c * scalar for f, c in self.coeffs.items()}, self.colors)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Series":
        return self * (Fraction(1) / _coerce(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cutoff, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        return series_to_text(self)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        terms = lincomb_to_json(LinComb._raw(self.coeffs))
        out = {"cutoff": self.cutoff, "terms": terms}
        if self.colors != (DEFAULT_COLOR,):
            out["colors"] = list(self.colors)
        return out

    @classmethod
    def from_json(cls, data) -> "Series":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            cutoff = int(data["cutoff"])
            terms = data.get("terms", [])
            coeffs: dict = defaultdict(int)
            for term in terms:
                coeffs[parse_forest(term["forest"])] += Fraction(str(term["coeff"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SeriesError(f"malformed series JSON: {exc}") from exc
        return cls(cutoff, coeffs, tuple(data.get("colors", ())))


@lru_cache(maxsize=64)
def _forests(cutoff: int, colors: tuple) -> list[Forest]:
    return forests_up_to(cutoff, colors)


def series_to_text(s: Series) -> str:
    lines = [f"cutoff {s.cutoff}"]
    for f in s.support():
        lines.append(f"{format_coeff(s.coeffs[f])}\t{print_forest(f) or '𝟙'}")
    return "\n".join(lines)


def counit_series(cutoff: int, colors: Sequence[str] = (DEFAULT_COLOR,)) -> Series:
    """ε: 1 on the empty forest, 0 elsewhere; the unit of GL composition."""
    return Series(cutoff, {EMPTY: 1}, tuple(colors))


def delta_series(f: Forest | str, cutoff: int, coeff: Rational = 1) -> Series:
    """The series that is ``coeff`` on one forest and zero elsewhere."""
    if isinstance(f, str):
        f = parse_forest(f)
    return Series(cutoff, {f: coeff})


# --------------------------------------------------------------------------
# Group structure
# --------------------------------------------------------------------------

def compose_gl(alpha: Series, beta: Series) -> Series:
    """(α∘β)(ω) = Σ α(ω₁)β(ω₂) over the terms ω₁⊗ω₂ of Δ(ω)."""
    colors = alpha._check(beta)
    a, b = alpha.coeffs, beta.coeffs
    out = {}
    for f in _forests(alpha.cutoff, colors):
        total = 0
        for (left, right), c in _coproduct_cuts(f).items():
            x = a.get(left)
            if x:
                y = b.get(right)
                if y:
                    total += c * x * y
        if total:
            out[f] = total
    return Series(alpha.cutoff, out, colors)


def inverse(alpha: Series) -> Series:
    """Group inverse α⁻¹(ω) = α(S(ω))."""
    if alpha[EMPTY] != 1:
        raise SeriesError("only series with value 1 on the empty forest are invertible")
    out = {}
    for f in alpha.forests():
        v = alpha.pair(antipode_N(LinComb._raw({f: 1})))
        if v:
            out[f] = v
    return Series(alpha.cutoff, out, alpha.colors)


def _shuffle_pairs(cutoff: int, colors: tuple) -> Iterable[tuple[Forest, Forest, tuple]]:
    forests = [f for f in _forests(cutoff, colors) if f]
    for u in forests:
        room = cutoff - order(u)
        for v in forests:
            if order(v) <= room:
                yield u, v, shuffle_words(u, v)


def is_logarithmic(alpha: Series) -> bool:
    """α(𝟙) = 0 and α vanishes on every shuffle of two non-empty forests."""
    if alpha[EMPTY] != 0:
        return False
    a = alpha.coeffs
    for _, _, words in _shuffle_pairs(alpha.cutoff, alpha.colors):
        if sum(m * a.get(w, 0) for w, m in words) != 0:
            return False
    return True


def is_exponential(alpha: Series) -> bool:
    """α(𝟙) = 1 and α(ω₁⧢ω₂) = α(ω₁)α(ω₂)."""
    if alpha[EMPTY] != 1:
        return False
    a = alpha.coeffs
    for u, v, words in _shuffle_pairs(alpha.cutoff, alpha.colors):
        if sum(m * a.get(w, 0) for w, m in words) != a.get(u, 0) * a.get(v, 0):
            return False
    return True


def _power_sum(x: Series, weights) -> Series:
    # Σ_{k≥1} weights(k) x^{∘k}; x vanishes on 𝟙 so x^{∘k} vanishes below order k
    total = Series(x.cutoff, {}, x.colors)
    power = counit_series(x.cutoff, x.colors)
    for k in range(1, x.cutoff + 1):
        power = compose_gl(power, x)
        if not power.coeffs:
            break
        total = total + power * weights(k)
    return total


def exp_gl(alpha: Series) -> Series:
    """Σ_j α^{∘j}/j! for a logarithmic α."""
    if not is_logarithmic(alpha):
        raise SeriesError("exp_gl needs a logarithmic series")
    return counit_series(alpha.cutoff, alpha.colors) + _power_sum(
        alpha, lambda k: Fraction(1, math.factorial(k))
    )


def log_gl(alpha: Series) -> Series:
    """Σ_k (-1)^{k+1}(α-ε)^{∘k}/k for an exponential α."""
    if not is_exponential(alpha):
        raise SeriesError("log_gl needs an exponential series")
    shifted = alpha - counit_series(alpha.cutoff, alpha.colors)
    return _power_sum(shifted, lambda k: Fraction((-1) ** (k + 1), k))


# --------------------------------------------------------------------------
# Random logarithmic series
# --------------------------------------------------------------------------

def _is_lyndon(word: tuple) -> bool:
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def lyndon_words(letters: Sequence, max_weight: int, weight) -> list[tuple]:
    """Lyndon words over ``letters`` (given in increasing order) with weight ≤ ``max_weight``."""
    index = {x: i for i, x in enumerate(letters)}
    out = []

    def extend(word: tuple, w: int):
        if word and _is_lyndon(tuple(index[x] for x in word)):
            out.append(word)
        for x in letters:
            wx = w + weight(x)
            if wx <= max_weight:
                extend(word + (x,), wx)

    extend((), 0)
    return out


def _bracket(word: tuple) -> dict:
    """Lie polynomial of a Lyndon word via its standard factorization."""
    if len(word) == 1:
        return {word: 1}
    # longest proper Lyndon suffix
    for i in range(1, len(word)):
        if _is_lyndon_word(word[i:]):
            left, right = _bracket(word[:i]), _bracket(word[i:])
            break
    data: dict = defaultdict(int)
    for u, c in left.items():
        for v, d in right.items():
            data[u + v] += c * d
            data[v + u] -= c * d
    return {k: v for k, v in data.items() if v}


def _is_lyndon_word(word: tuple) -> bool:
    keys = tuple(tree_key(t) for t in word)
    return _is_lyndon(keys)


def random_logarithmic(
    cutoff: int,
    rng: random.Random,
    colors: Sequence[str] = (DEFAULT_COLOR,),
    low: int = -3,
    high: int = 3,
    attempts: int = 1000,
) -> Series:
    """A random logarithmic series with integer coefficients in [low, high].

    Logarithmic series are exactly the duals of Lie polynomials in the
    trees (with the commutator of concatenation), so a random integer
    combination of the Lyndon basis is drawn and redrawn until every
    resulting coefficient lands in the requested range.
    """
    trees = sorted({f[0] for f in _forests(cutoff, tuple(colors)) if len(f) == 1}, key=tree_key)
    basis = [_bracket(w) for w in lyndon_words(trees, cutoff, lambda t: order((t,)))]
    for _ in range(attempts):
        data: dict = defaultdict(int)
        for poly in basis:
            c = rng.randint(low, high)
            if c:
                for w, d in poly.items():
                    data[w] += c * d
        if all(low <= v <= high for v in data.values()):
            return Series(cutoff, data, tuple(colors))
    raise SeriesError("could not draw a logarithmic series within the coefficient range")


__all__ = [
    "Series",
    "SeriesError",
    "compose_gl",
    "counit_series",
    "delta_series",
    "exp_gl",
    "inverse",
    "is_exponential",
    "is_logarithmic",
    "log_gl",
    "lyndon_words",
    "random_logarithmic",
    "series_to_text",
]
