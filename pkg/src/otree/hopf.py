"""The Hopf algebra of ordered forests with shuffle product.

Coproduct and antipode each come in independent flavours: the cut sums,
and recursions peeling off the last tree of a word.  The free associative
structure (deconcatenation coproduct, signed reversal antipode) lives here
too, since the cut formulas are phrased in terms of it.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Callable

from .cuts import apply_cut, left_cuts
from .forest import EMPTY, Forest, Tree
from .lincomb import (
    ONE,
    ZERO,
    LinComb,
    Rational,
    TensorComb,
    linear,
    mu_shuffle,
    shuffle,
    shuffle_words,
    sqcup_cdot,
    tensor_map,
)

LinearMap = Callable[[LinComb], LinComb]


def counit(a: LinComb) -> Rational:
    return a[EMPTY]


def unit(r: Rational = 1) -> LinComb:
    return ONE * r


def identity(a: LinComb) -> LinComb:
    return a


def unit_counit(a: LinComb) -> LinComb:
    return unit(counit(a))


def _tensor_linear(fn: Callable[[Forest], dict]) -> Callable[[LinComb], TensorComb]:
    def apply(a: LinComb) -> TensorComb:
        data: dict = defaultdict(int)
        for f, c in a.raw_items():
            for k, d in fn(f).items():
                data[k] += c * d
        return TensorComb._raw(data)

    apply.__doc__ = fn.__doc__
    return apply


def _cut_sum(f: Forest, family: str) -> dict:
    data: dict = defaultdict(int)
    for cut in left_cuts(f, family):
        res = apply_cut(f, cut)
        for p, c in res.cut_part.raw_items():
            data[(p, res.remainder)] += c
    return dict(data)


# --------------------------------------------------------------------------
# Coproduct
# --------------------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def _coproduct_cuts(f: Forest) -> dict:
    return _cut_sum(f, "falc")


@lru_cache(maxsize=1 << 14)
def _grafted_part(t: Tree) -> TensorComb:
    # (I ⊗ B⁺)Δ(B⁻τ), with B⁺ using the color of τ's root
    inner = _coproduct_rec(t.children)
    return TensorComb._raw({(l, (Tree(t.color, r),)): c for (l, r), c in inner.items()})


@lru_cache(maxsize=1 << 14)
def _coproduct_rec(f: Forest) -> dict:
    if not f:
        return {(EMPTY, EMPTY): 1}
    head, last = f[:-1], f[-1]
    rest = sqcup_cdot(TensorComb._raw(_coproduct_rec(head)), _grafted_part(last))
    data = rest.as_dict()
    data[(f, EMPTY)] = data.get((f, EMPTY), 0) + 1
    return data


coproduct_N = _tensor_linear(_coproduct_cuts)
coproduct_N.__doc__ = "Sum of P⊗R over full admissible left cuts."
coproduct_N_recursive = _tensor_linear(_coproduct_rec)
coproduct_N_recursive.__doc__ = "Δ(ωτ) = ωτ⊗𝟙 + Δ(ω) ⧢· (I⊗B⁺)Δ(B⁻τ)."


def _deconcatenate(f: Forest) -> dict:
    return {(f[:k], f[k:]): 1 for k in range(len(f) + 1)}


coproduct_F = _tensor_linear(_deconcatenate)
coproduct_F.__doc__ = "Deconcatenation: sum over word cuts."


# --------------------------------------------------------------------------
# Antipodes
# --------------------------------------------------------------------------

def _reverse(f: Forest) -> LinComb:
    return LinComb._raw({f[::-1]: -1 if len(f) % 2 else 1})


reversal_SF = linear(_reverse)
reversal_SF.__doc__ = "Signed reversal τ₁…τⱼ ↦ (-1)^j τⱼ…τ₁."


@lru_cache(maxsize=1 << 14)
def _antipode_closed(f: Forest) -> LinComb:
    data: dict = defaultdict(int)
    for cut in left_cuts(f, "lc"):
        res = apply_cut(f, cut)
        for p, c in res.cut_part.raw_items():
            for w, m in shuffle_words(p, res.remainder):
                data[w] += c * m
    return reversal_SF(LinComb._raw(data))


@lru_cache(maxsize=1 << 14)
def _antipode_rec(f: Forest) -> LinComb:
    if not f:
        return ONE
    # S(ωτ) = -μ((S⊗I)(Δ(ω) ⧢· (I⊗B⁺)Δ(B⁻τ)))
    x = sqcup_cdot(TensorComb._raw(_coproduct_rec(f[:-1])), _grafted_part(f[-1]))
    return -mu_shuffle(tensor_map(antipode_N_recursive, identity, x))


@lru_cache(maxsize=1 << 14)
def _antipode_cut_rec(f: Forest) -> LinComb:
    if not f:
        return ONE
    # S(ω) = -Σ_{FALC minus cut-everything} S(P)⧢R
    total = ZERO
    for (p, r), c in _coproduct_cuts(f).items():
        if r:
            total = total + shuffle(_antipode_cut_rec(p), LinComb._raw({r: c}))
    return -total


antipode_N = linear(_antipode_closed)
antipode_N.__doc__ = "Closed form: signed reversal of Σ over left cuts of P⧢R."
antipode_N_recursive = linear(_antipode_rec)
antipode_N_cut_recursive = linear(_antipode_cut_rec)


# --------------------------------------------------------------------------
# Convolution
# --------------------------------------------------------------------------

_COPRODUCTS = {"N": coproduct_N, "F": coproduct_F}


def convolution(A: LinearMap, B: LinearMap, a: LinComb, which: str = "N") -> LinComb:
    """(A⋆B)(a) = μ((A⊗B)Δ(a)), with μ the shuffle and Δ chosen by ``which``."""
    try:
        delta = _COPRODUCTS[which]
    except KeyError:
        raise ValueError(f"unknown coproduct {which!r}; expected 'N' or 'F'") from None
    return mu_shuffle(tensor_map(A, B, delta(a)))
