"""Unordered forests, symmetrization, and the map back to ordered forests.

An unordered forest is stored as its canonical ordered representative
(see :func:`otree.forest.canonical`), so every :class:`ULinComb` key is
already normalized and class identity is plain tuple equality.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .forest import (
    DEFAULT_COLOR,
    EMPTY,
    Forest,
    Tree,
    canonical,
    check_bound,
    orbit,
    order,
    pi,
    sigma,
    tree_key,
)
from .hopf import coproduct_N, antipode_N
from .lincomb import ONE, LinComb, Rational, TensorComb, linear, shuffle


class ULinComb(LinComb):
    """Linear combination of unordered forests, keyed by canonical representatives."""

    __slots__ = ()

    @classmethod
    def _normalize_key(cls, k):
        return canonical(tuple(k))


class UTensorComb(TensorComb):
    __slots__ = ()

    @classmethod
    def _normalize_key(cls, k):
        left, right = k
        return (canonical(tuple(left)), canonical(tuple(right)))


U_ONE = ULinComb({EMPTY: 1})


def _u(data: dict) -> ULinComb:
    # merge keys that collapse to the same class
    out: dict = defaultdict(int)
    for f, c in data.items():
        out[canonical(f)] += c
    return ULinComb._raw(out)


def _ulinear(fn):
    def apply(a: LinComb) -> ULinComb:
        data: dict = defaultdict(int)
        for f, c in a.raw_items():
            for g, d in fn(canonical(f)).raw_items():
                data[g] += c * d
        return ULinComb._raw(data)

    return apply


def enumerate_classes(n: int, colors: Sequence[str] = (DEFAULT_COLOR,), bound: int | None = None) -> list[Forest]:
    """Canonical representatives of all unordered forests with ``n`` nodes."""
    check_bound(n, bound)
    cols = tuple(sorted(set(colors)))
    tree_cache: dict = {}

    def trees(k: int) -> list[Tree]:
        if k not in tree_cache:
            tree_cache[k] = sorted(
                (Tree(c, sub) for c in cols for sub in forests(k - 1, None)), key=tree_key
            )
        return tree_cache[k]

    def forests(m: int, ceiling) -> list[Forest]:
        # multisets as key-nondecreasing words; ``ceiling`` bounds the first tree from below
        if m == 0:
            return [EMPTY]
        out = []
        for k in range(1, m + 1):
            for t in trees(k):
                if ceiling is not None and tree_key(t) < ceiling:
                    continue
                for rest in forests(m - k, tree_key(t)):
                    out.append((t,) + rest)
        return out

    return sorted(forests(n, None), key=lambda f: tuple(tree_key(t) for t in f))


def classes_up_to(n: int, colors: Sequence[str] = (DEFAULT_COLOR,)) -> list[Forest]:
    return [f for k in range(n + 1) for f in enumerate_classes(k, colors)]


# --------------------------------------------------------------------------
# Symmetrization
# --------------------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def _omega_tree(t: Tree) -> LinComb:
    inner = _omega_forest(t.children)
    return LinComb._raw({(Tree(t.color, f),): c for f, c in inner.raw_items()})


@lru_cache(maxsize=1 << 14)
def _omega_forest(f: Forest) -> LinComb:
    out = ONE
    for t in f:
        out = shuffle(out, _omega_tree(t))
    return out


omega = linear(_omega_forest)
omega.__doc__ = "Symmetrization: Ω(ωτ) = Ω(ω)⧢Ω(τ), Ω(B⁺ω) = B⁺(Ω(ω))."


def _omega_orbit_forest(f: Forest) -> LinComb:
    s = sigma(f)
    return LinComb._raw({g: s for g in orbit(f)})


omega_orbit = linear(_omega_orbit_forest)
omega_orbit.__doc__ = "Symmetrization as σ(ω) times the sum over the equivalence class."


def omega_inv(a: LinComb) -> ULinComb:
    """Left inverse of Ω: divide each coefficient by π and forget the order."""
    data: dict = defaultdict(int)
    for f, c in a.raw_items():
        data[canonical(f)] += Fraction(c, pi(f))
    return ULinComb._raw(data)


def omega_inv_tensor(x: TensorComb) -> UTensorComb:
    data: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        data[(canonical(l), canonical(r))] += Fraction(c, pi(l) * pi(r))
    return UTensorComb._raw(data)


def omega_tensor(x: TensorComb) -> TensorComb:
    data: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        for f, a in _omega_forest(l).raw_items():
            for g, b in _omega_forest(r).raw_items():
                data[(f, g)] += c * a * b
    return TensorComb._raw(data)


def forget_lincomb(a: LinComb) -> ULinComb:
    return _u(a.as_dict())


# --------------------------------------------------------------------------
# The commutative Hopf algebra
# --------------------------------------------------------------------------

def counit_C(a: LinComb) -> Rational:
    return a[EMPTY]


def product_C(a: LinComb, b: LinComb) -> ULinComb:
    """Commutative concatenation of unordered forests."""
    data: dict = defaultdict(int)
    for f, c in a.raw_items():
        for g, d in b.raw_items():
            data[canonical(f + g)] += c * d
    return ULinComb._raw(data)


def _tensor_product_C(x: dict, y: dict) -> dict:
    data: dict = defaultdict(int)
    for (l1, r1), c in x.items():
        for (l2, r2), d in y.items():
            data[(canonical(l1 + l2), canonical(r1 + r2))] += c * d
    return data


@lru_cache(maxsize=1 << 14)
def _coproduct_C_tree(t: Tree) -> dict:
    data: dict = defaultdict(int)
    data[((t,), EMPTY)] += 1
    for (l, r), c in _coproduct_C_forest(t.children).items():
        data[(l, canonical((Tree(t.color, r),)))] += c
    return dict(data)


@lru_cache(maxsize=1 << 14)
def _coproduct_C_forest(f: Forest) -> dict:
    out: dict = {(EMPTY, EMPTY): 1}
    for t in f:
        out = _tensor_product_C(out, _coproduct_C_tree(t))
    return out


def coproduct_C(a: LinComb) -> UTensorComb:
    """Δ_C by the tree recursion, extended multiplicatively over forests."""
    data: dict = defaultdict(int)
    for f, c in a.raw_items():
        for k, d in _coproduct_C_forest(canonical(f)).items():
            data[k] += c * d
    return UTensorComb._raw(data)


def coproduct_C_via_omega(a: LinComb) -> UTensorComb:
    """(Ω⊗Ω)⁻¹ Δ_N Ω."""
    return omega_inv_tensor(coproduct_N(omega(ULinComb(a.raw_items()))))


@lru_cache(maxsize=1 << 14)
def _antipode_C(f: Forest) -> ULinComb:
    if not f:
        return U_ONE
    # (S⋆I)(ω) = 0 for ω ≠ 𝟙; the term with right factor 𝟙 isolates S(ω)
    total: dict = defaultdict(int)
    for (l, r), c in _coproduct_C_forest(f).items():
        if r:
            for g, d in _antipode_C(l).raw_items():
                total[canonical(g + r)] -= c * d
    return ULinComb._raw(total)


antipode_C = _ulinear(_antipode_C)
antipode_C.__doc__ = "S_C as the convolution inverse of the identity."


def antipode_C_via_omega(a: LinComb) -> ULinComb:
    """Ω⁻¹ S_N Ω."""
    return omega_inv(antipode_N(omega(ULinComb(a.raw_items()))))


# --------------------------------------------------------------------------
# Series over unordered forests
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class USeries:
    """Truncated functional on unordered forests (an S-series coefficient map)."""

    cutoff: int
    coeffs: dict = field(default_factory=dict)
    colors: tuple = (DEFAULT_COLOR,)

    def __post_init__(self):
        merged: dict = defaultdict(int)
        for f, c in self.coeffs.items():
            merged[canonical(tuple(f))] += c
        object.__setattr__(self, "coeffs", {f: c for f, c in merged.items() if c != 0})

    def __getitem__(self, f: Forest) -> Rational:
        return self.coeffs.get(canonical(f), 0)

    def support(self) -> list[Forest]:
        return sorted(self.coeffs, key=lambda f: (order(f), tuple(tree_key(t) for t in f)))

    def is_tree_supported(self) -> bool:
        return all(len(f) == 1 for f in self.coeffs)

    def is_multiplicative(self) -> bool:
        if self[EMPTY] != 1:
            return False
        for f in classes_up_to(self.cutoff, self.colors):
            expected = 1
            for t in f:
                expected *= self[(t,)]
            if self[f] != expected:
                return False
        return True


def omega_star(series) -> USeries:
    """Dual map: β(ω) = ⟨α, Ω(ω)⟩ = σ(ω) Σ_{ω̃∼ω} α(ω̃)."""
    coeffs = {}
    for f in classes_up_to(series.cutoff, series.colors):
        coeffs[f] = series.pair(_omega_forest(f))
    return USeries(series.cutoff, coeffs, series.colors)
