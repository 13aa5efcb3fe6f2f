"""Algebraic laws checked exhaustively over small forests.

Each law is a generator taking a maximum order and yielding a description
of every counterexample it finds; an empty run means the law holds on the
whole range.  ``otree verify`` and the test-suite both drive this registry.
"""

from __future__ import annotations

import random
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Iterator

from . import butcher, series
from .cuts import apply_cut, left_cuts
from .forest import (
    HIDDEN_COLOR,
    Tree,
    b_minus,
    catalan_count,
    enumerate_forests,
    forests_up_to,
    order,
    orbit,
    parse_forest,
    pi,
    print_forest,
    sigma,
)
from .grafting import gl_direct, gl_product, graft, graft_direct_result
from .hopf import (
    antipode_N,
    antipode_N_cut_recursive,
    antipode_N_recursive,
    convolution,
    coproduct_F,
    coproduct_N,
    coproduct_N_recursive,
    identity,
    reversal_SF,
    unit_counit,
)
from .lincomb import ONE, LinComb, TensorComb, concat, shuffle, spr, tensor_map, twist

Check = Callable[[int], Iterator[str]]


@dataclass(frozen=True)
class Law:
    name: str
    group: str
    description: str
    check: Check


@dataclass(frozen=True)
class LawReport:
    law: Law
    max_order: int
    failures: list
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures


REGISTRY: dict[str, Law] = {}


def law(group: str, description: str):
    def register(fn: Check) -> Check:
        name = fn.__name__.replace("_", "-")
        REGISTRY[name] = Law(name, group, description, fn)
        return fn

    return register


def _one(f) -> LinComb:
    return LinComb._raw({f: 1})


def _s(f) -> str:
    return print_forest(f) or "𝟙"


def _forests(n: int) -> list:
    return forests_up_to(n)


def _pairs(n: int):
    fs = _forests(n)
    for a in fs:
        for b in fs:
            if order(a) + order(b) <= n:
                yield a, b


def _triples(n: int):
    fs = _forests(n)
    for a, b in _pairs(n):
        room = n - order(a) - order(b)
        for c in fs:
            if order(c) > room:
                break
            yield a, b, c


# --------------------------------------------------------------------------
# Forests and words
# --------------------------------------------------------------------------

@law("forest", "print(parse(s)) round-trips and B⁻B⁺ is the identity")
def parse_print_roundtrip(n: int):
    for f in _forests(n):
        if parse_forest(print_forest(f)) != f:
            yield f"round-trip failed on {_s(f)}"
        if b_minus((Tree("0", f),)) != f:
            yield f"B⁻B⁺ failed on {_s(f)}"


@law("forest", "enumeration sizes follow the colored Catalan numbers (1 and 2 colors)")
def catalan_counts(n: int):
    for colors in (("0",), ("a", "b")):
        for k in range(min(n, 7) + 1):
            got = len(enumerate_forests(k, colors))
            want = catalan_count(k, len(colors))
            if got != want:
                yield f"{len(colors)} colors, order {k}: {got} forests, expected {want}"


@law("forest", "π = σ · orbit size, with orbits found by brute force")
def symmetry_counts(n: int):
    for f in butcher.classes_up_to(min(n, 5)):
        size = len(orbit(f))
        if pi(f) != sigma(f) * size:
            yield f"{_s(f)}: π={pi(f)} σ={sigma(f)} orbit={size}"


@law("words", "shuffle is commutative and associative with unit 𝟙")
def shuffle_laws(n: int):
    for a, b in _pairs(n):
        if shuffle(_one(a), _one(b)) != shuffle(_one(b), _one(a)):
            yield f"{_s(a)} ⧢ {_s(b)} not commutative"
        if shuffle(ONE, _one(a)) != _one(a):
            yield f"𝟙 not a unit on {_s(a)}"
    for a, b, c in _triples(n):
        left = shuffle(shuffle(_one(a), _one(b)), _one(c))
        right = shuffle(_one(a), shuffle(_one(b), _one(c)))
        if left != right:
            yield f"shuffle not associative on {_s(a)}, {_s(b)}, {_s(c)}"


@law("words", "concatenation is associative with unit 𝟙 and additive in order")
def concat_laws(n: int):
    for a, b, c in _triples(n):
        if concat(concat(_one(a), _one(b)), _one(c)) != concat(_one(a), concat(_one(b), _one(c))):
            yield f"concatenation not associative on {_s(a)}, {_s(b)}, {_s(c)}"
    for a, b in _pairs(n):
        if order(a + b) != order(a) + order(b):
            yield f"order not additive on {_s(a)}, {_s(b)}"


# --------------------------------------------------------------------------
# Grafting and the GL product
# --------------------------------------------------------------------------

@law("grafting", "recursive grafting equals direct attachment, with |target|^k words")
def graft_oracle(n: int):
    for a, b in _pairs(n):
        direct = graft_direct_result(a, b)
        if graft(_one(a), _one(b)) != direct.value:
            yield f"{_s(a)}[{_s(b)}] differs between recursion and direct attachment"
        if direct.term_count != order(b) ** len(a):
            yield f"{_s(a)}[{_s(b)}] produced {direct.term_count} words"


@law("grafting", "d[ab] = d[a]b + a d[b] for single trees d")
def leibniz_rule(n: int):
    for a, b in _pairs(n):
        room = n - order(a) - order(b)
        for d in _forests(room):
            if len(d) != 1:
                continue
            lhs = graft(_one(d), _one(a + b))
            rhs = concat(graft(_one(d), _one(a)), _one(b)) + concat(_one(a), graft(_one(d), _one(b)))
            if lhs != rhs:
                yield f"Leibniz fails for d={_s(d)}, a={_s(a)}, b={_s(b)}"


@law("grafting", "d[a[b]] = (da)[b] + d[a][b] for single trees d")
def composition_rule(n: int):
    for a, b in _pairs(n):
        room = n - order(a) - order(b)
        for d in _forests(room):
            if len(d) != 1:
                continue
            D, A, B = _one(d), _one(a), _one(b)
            if graft(D, graft(A, B)) != graft(concat(D, A), B) + graft(graft(D, A), B):
                yield f"composition fails for d={_s(d)}, a={_s(a)}, b={_s(b)}"


@law("grafting", "GL is associative, (a∘b)[c] = a[b[c]], and direct GL counts (|b|+1)^#a words")
def gl_laws(n: int):
    for a, b in _pairs(n):
        res = gl_direct(a, b)
        if res.value != gl_product(_one(a), _one(b)):
            yield f"{_s(a)} ∘ {_s(b)} differs between recursion and direct attachment"
        if res.term_count != (order(b) + 1) ** len(a):
            yield f"{_s(a)} ∘ {_s(b)} produced {res.term_count} words"
        if any(order(f) != order(a) + order(b) for f, _ in res.value.raw_items()):
            yield f"{_s(a)} ∘ {_s(b)} is not homogeneous"
        if gl_product(ONE, _one(a)) != _one(a) or gl_product(_one(a), ONE) != _one(a):
            yield f"𝟙 not a GL unit on {_s(a)}"
    for a, b, c in _triples(n):
        A, B, C = _one(a), _one(b), _one(c)
        if gl_product(gl_product(A, B), C) != gl_product(A, gl_product(B, C)):
            yield f"GL not associative on {_s(a)}, {_s(b)}, {_s(c)}"
        if graft(gl_product(A, B), C) != graft(A, graft(B, C)):
            yield f"(a∘b)[c] ≠ a[b[c]] on {_s(a)}, {_s(b)}, {_s(c)}"


# --------------------------------------------------------------------------
# Cuts
# --------------------------------------------------------------------------

def _pr_multiset(f, cuts, strip_root: bool = False) -> Counter:
    out: Counter = Counter()
    for c in cuts:
        res = apply_cut(f, c)
        rem = b_minus(res.remainder) if strip_root else res.remainder
        out[(frozenset(res.cut_part.raw_items()), rem)] += 1
    return out


@law("cuts", "FALC(ω) = ALC(B⁺ω) and FALC splits as a word cut plus an ALC of the rest")
def cut_structure(n: int):
    for f in _forests(n):
        falc = _pr_multiset(f, left_cuts(f, "falc"))
        rooted = (Tree(HIDDEN_COLOR, f),)
        if falc != _pr_multiset(rooted, left_cuts(rooted, "alc"), strip_root=True):
            yield f"FALC ≠ ALC(B⁺) on {_s(f)}"
        split: Counter = Counter()
        for k in range(len(f) + 1):
            rest = f[k:]
            for c in left_cuts(rest, "alc"):
                res = apply_cut(rest, c)
                part = shuffle(_one(f[:k]), res.cut_part)
                split[(frozenset(part.raw_items()), res.remainder)] += 1
        if falc != split:
            yield f"FALC ≠ WC × ALC on {_s(f)}"
        for c in left_cuts(f, "all"):
            res = apply_cut(f, c)
            if any(order(p) + order(res.remainder) != order(f) for p, _ in res.cut_part.raw_items()):
                yield f"cut {c} of {_s(f)} does not conserve order"


# --------------------------------------------------------------------------
# Hopf algebra
# --------------------------------------------------------------------------

def _delta_left(x) -> dict:
    out: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        for (a, b), d in coproduct_N(_one(l)).raw_items():
            out[(a, b, r)] += c * d
    return {k: v for k, v in out.items() if v}


def _delta_right(x) -> dict:
    out: dict = defaultdict(int)
    for (l, r), c in x.raw_items():
        for (a, b), d in coproduct_N(_one(r)).raw_items():
            out[(l, a, b)] += c * d
    return {k: v for k, v in out.items() if v}


@law("hopf", "(Δ⊗I)Δ = (I⊗Δ)Δ and every term is graded")
def coassociativity(n: int):
    for f in _forests(n):
        d = coproduct_N(_one(f))
        if _delta_left(d) != _delta_right(d):
            yield f"coassociativity fails on {_s(f)}"
        if any(order(l) + order(r) != order(f) for (l, r), _ in d.raw_items()):
            yield f"Δ({_s(f)}) is not graded"


@law("hopf", "Δ(a⧢b) = Δ(a) ⧢⊗⧢ Δ(b)")
def bialgebra_compatibility(n: int):
    for a, b in _pairs(n):
        lhs = coproduct_N(shuffle(_one(a), _one(b)))
        rhs = spr(coproduct_N(_one(a)), coproduct_N(_one(b)))
        if lhs != rhs:
            yield f"compatibility fails on {_s(a)}, {_s(b)}"


@law("hopf", "S⋆I = I⋆S = u∘e for both the ordered-forest and free associative structures")
def antipode_identity(n: int):
    for f in _forests(n):
        a = _one(f)
        want = unit_counit(a)
        for which, S in (("N", antipode_N), ("F", reversal_SF)):
            if convolution(S, identity, a, which) != want:
                yield f"(S⋆I)({_s(f)}) ≠ u∘e in H_{which}"
            if convolution(identity, S, a, which) != want:
                yield f"(I⋆S)({_s(f)}) ≠ u∘e in H_{which}"


@law("hopf", "S∘S = I, S(a⧢b) = S(a)⧢S(b), and (S⊗S)Δ = τ∘Δ∘S")
def antipode_relations(n: int):
    for f in _forests(n):
        a = _one(f)
        s = antipode_N(a)
        if antipode_N(s) != a:
            yield f"S∘S ≠ I on {_s(f)}"
        if tensor_map(antipode_N, antipode_N, coproduct_N(a)) != twist(coproduct_N(s)):
            yield f"(S⊗S)Δ ≠ τΔS on {_s(f)}"
    for a, b in _pairs(n):
        A, B = _one(a), _one(b)
        if antipode_N(shuffle(A, B)) != shuffle(antipode_N(A), antipode_N(B)):
            yield f"S(a⧢b) ≠ S(a)⧢S(b) on {_s(a)}, {_s(b)}"
        if reversal_SF(shuffle(A, B)) != shuffle(reversal_SF(A), reversal_SF(B)):
            yield f"S_F(a⧢b) ≠ S_F(a)⧢S_F(b) on {_s(a)}, {_s(b)}"


@law("hopf", "recursive and cut-based coproducts and antipodes agree")
def hopf_oracles(n: int):
    for f in _forests(n):
        a = _one(f)
        if coproduct_N(a) != coproduct_N_recursive(a):
            yield f"Δ recursion differs from cut sum on {_s(f)}"
        s = antipode_N(a)
        if s != antipode_N_recursive(a):
            yield f"S recursion differs from closed form on {_s(f)}"
        if s != antipode_N_cut_recursive(a):
            yield f"S cut recursion differs from closed form on {_s(f)}"
        if coproduct_F(a) != _word_cut_coproduct(f):
            yield f"Δ_F differs from word cuts on {_s(f)}"


def _word_cut_coproduct(f):
    data: dict = defaultdict(int)
    for c in left_cuts(f, "wc"):
        res = apply_cut(f, c)
        for p, k in res.cut_part.raw_items():
            data[(p, res.remainder)] += k
    return TensorComb._raw(data)


@law("hopf", "⟨a∘b, ω⟩ = ⟨a⊗b, Δω⟩ for all forests a, b, ω")
def gl_duality(n: int):
    dual: dict = defaultdict(dict)
    for f in _forests(n):
        for (l, r), c in coproduct_N(_one(f)).raw_items():
            dual[(l, r)][f] = c
    for a, b in _pairs(n):
        if gl_product(_one(a), _one(b)) != LinComb._raw(dual.get((a, b), {})):
            yield f"duality fails for {_s(a)} ∘ {_s(b)}"


# --------------------------------------------------------------------------
# Unordered forests
# --------------------------------------------------------------------------

@law("butcher", "Ω is an injective Hopf homomorphism with Ω⁻¹Ω = I and ΩΩ = πΩ")
def omega_homomorphism(n: int):
    classes = butcher.classes_up_to(n)
    images = {}
    for f in classes:
        u = butcher.ULinComb._raw({f: 1})
        o = butcher.omega(u)
        if o != butcher.omega_orbit(u):
            yield f"recursive Ω differs from σ·orbit on {_s(f)}"
        if coproduct_N(o) != butcher.omega_tensor(butcher.coproduct_C(u)):
            yield f"ΔΩ ≠ (Ω⊗Ω)Δ_C on {_s(f)}"
        if butcher.coproduct_C(u) != butcher.coproduct_C_via_omega(u):
            yield f"Δ_C routes disagree on {_s(f)}"
        sc = butcher.antipode_C(u)
        if antipode_N(o) != butcher.omega(sc):
            yield f"S_N Ω ≠ Ω S_C on {_s(f)}"
        if sc != butcher.antipode_C_via_omega(u):
            yield f"S_C routes disagree on {_s(f)}"
        if butcher.omega_inv(o) != u:
            yield f"Ω⁻¹Ω ≠ I on {_s(f)}"
        if butcher.omega(o) != o * pi(f):
            yield f"ΩΩ ≠ πΩ on {_s(f)}"
        images.setdefault(o, []).append(f)
    for fs in images.values():
        if len(fs) > 1:
            yield "Ω not injective on " + ", ".join(_s(f) for f in fs)
    for a in classes:
        for b in classes:
            if order(a) + order(b) > n:
                continue
            A, B = butcher.ULinComb._raw({a: 1}), butcher.ULinComb._raw({b: 1})
            if butcher.omega(butcher.product_C(A, B)) != shuffle(butcher.omega(A), butcher.omega(B)):
                yield f"Ω not multiplicative on {_s(a)}, {_s(b)}"


# --------------------------------------------------------------------------
# Series
# --------------------------------------------------------------------------

SERIES_SEED = 20240


@law("series", "exp/log round trip, group inverse and associativity on random series")
def series_group(n: int):
    cutoff = min(n, 4)
    rng = random.Random(SERIES_SEED)
    eps = series.counit_series(cutoff)
    exps = []
    for i in range(5):
        a = series.random_logarithmic(cutoff, rng)
        e = series.exp_gl(a)
        exps.append(e)
        if not series.is_exponential(e):
            yield f"draw {i}: exp is not exponential"
        if series.log_gl(e) != a:
            yield f"draw {i}: log(exp(α)) ≠ α"
        if series.compose_gl(e, series.inverse(e)) != eps:
            yield f"draw {i}: α∘α⁻¹ ≠ ε"
        if series.compose_gl(eps, e) != e or series.compose_gl(e, eps) != e:
            yield f"draw {i}: ε is not a unit"
        if not butcher.omega_star(a).is_tree_supported():
            yield f"draw {i}: Ω* of a logarithmic series leaves the trees"
        if not butcher.omega_star(e).is_multiplicative():
            yield f"draw {i}: Ω* of an exponential series is not multiplicative"
    for x, y, z in zip(exps, exps[1:], exps[2:]):
        left = series.compose_gl(series.compose_gl(x, y), z)
        if left != series.compose_gl(x, series.compose_gl(y, z)):
            yield "GL composition not associative"
        if not series.is_exponential(series.compose_gl(x, y)):
            yield "product of exponentials is not exponential"
        for k in range(cutoff):
            if series.compose_gl(x, y).truncate(k) != series.compose_gl(x.truncate(k), y.truncate(k)):
                yield f"truncation to {k} does not commute with composition"


# --------------------------------------------------------------------------

def run_laws(max_order: int = 5, names=None) -> list[LawReport]:
    selected = [REGISTRY[n] for n in names] if names else list(REGISTRY.values())
    reports = []
    for item in selected:
        start = time.perf_counter()
        failures = list(item.check(max_order))
        reports.append(LawReport(item, max_order, failures, time.perf_counter() - start))
    return reports
