import random
from fractions import Fraction

import pytest
from hypothesis import given

from helpers import F, L, lincombs
from otree.butcher import (
    U_ONE,
    ULinComb,
    USeries,
    UTensorComb,
    antipode_C,
    antipode_C_via_omega,
    classes_up_to,
    coproduct_C,
    coproduct_C_via_omega,
    counit_C,
    enumerate_classes,
    forget_lincomb,
    omega,
    omega_inv,
    omega_orbit,
    omega_star,
    omega_tensor,
    product_C,
)
from otree.forest import EMPTY, OrderBoundError, pi, print_forest
from otree.hopf import antipode_N, coproduct_N
from otree.lincomb import LinComb, shuffle
from otree.series import Series, exp_gl, random_logarithmic

CLASSES = classes_up_to(5)


def U(*terms) -> ULinComb:
    if len(terms) == 1 and isinstance(terms[0], str):
        return ULinComb({F(terms[0]): 1})
    return ULinComb([(F(f), c) for c, f in terms])


def cls(f) -> ULinComb:
    return ULinComb({f: 1})


def ids(f):
    return print_forest(f) or "unit"


class TestClasses:
    def test_counts(self):
        assert [len(enumerate_classes(n)) for n in range(8)] == [1, 1, 2, 4, 9, 20, 48, 115]

    def test_representatives_are_canonical(self):
        assert enumerate_classes(3) == [F("()()()"), F("()(())"), F("(()())"), F("((()))")]

    def test_colors(self):
        assert len(enumerate_classes(2, ("a", "b"))) == 7

    def test_bound(self):
        with pytest.raises(OrderBoundError):
            enumerate_classes(4, bound=3)

    def test_keys_merge(self):
        a = ULinComb([(F("(())()"), 1), (F("()(())"), 2)])
        assert a == U((3, "()(())"))
        assert forget_lincomb(L("(())()") + L("()(())")) == a * Fraction(2, 3)


class TestOmega:
    def test_examples(self):
        assert omega(U("(()())")) == L((2, "(()())"))
        assert omega(U("()(())")) == L("()(())") + L("(())()")
        assert omega(U("()()")) == L((2, "()()"))
        assert omega(U_ONE) == LinComb({EMPTY: 1})

    @pytest.mark.parametrize("f", CLASSES, ids=ids)
    def test_recursive_matches_orbit_form(self, f):
        assert omega(cls(f)) == omega_orbit(cls(f))

    @pytest.mark.parametrize("f", classes_up_to(4), ids=ids)
    def test_scaling(self, f):
        assert omega(omega(cls(f))) == pi(f) * omega(cls(f))

    @pytest.mark.parametrize("f", CLASSES, ids=ids)
    def test_left_inverse(self, f):
        assert omega_inv(omega(cls(f))) == cls(f)

    def test_injective(self):
        images = [omega(cls(f)) for f in CLASSES]
        assert len(set(images)) == len(images)

    @given(lincombs(2), lincombs(2))
    def test_multiplicative(self, a, b):
        ua, ub = forget_lincomb(a), forget_lincomb(b)
        assert omega(product_C(ua, ub)) == shuffle(omega(ua), omega(ub))


class TestHopfC:
    def test_coproduct_example(self):
        expected = UTensorComb([((F("(())"), EMPTY), 1), ((F("()"), F("()")), 1), ((EMPTY, F("(())")), 1)])
        assert coproduct_C(U("(())")) == expected

    def test_antipode_examples(self):
        assert antipode_C(U("()")) == -U("()")
        assert antipode_C(U("(())")) == U((-1, "(())"), (1, "()()"))
        assert antipode_C(U_ONE) == U_ONE

    def test_counit(self):
        assert counit_C(U("()") + 2 * U_ONE) == 2

    @pytest.mark.parametrize("f", CLASSES, ids=ids)
    def test_coproduct_two_ways(self, f):
        assert coproduct_C(cls(f)) == coproduct_C_via_omega(cls(f))

    @pytest.mark.parametrize("f", CLASSES, ids=ids)
    def test_antipode_two_ways(self, f):
        assert antipode_C(cls(f)) == antipode_C_via_omega(cls(f))

    @pytest.mark.parametrize("f", CLASSES, ids=ids)
    def test_homomorphism(self, f):
        assert coproduct_N(omega(cls(f))) == omega_tensor(coproduct_C(cls(f)))
        assert antipode_N(omega(cls(f))) == omega(antipode_C(cls(f)))


class TestDualMap:
    def test_values(self):
        alpha = Series(3, {F("()(())"): 1, F("(())()"): 2, F("(())"): 3})
        beta = omega_star(alpha)
        assert beta[F("(())")] == 3
        assert beta[F("(())()")] == 3
        assert beta[F("()()")] == 0

    def test_logarithmic_image_on_trees(self):
        alpha = random_logarithmic(4, random.Random(7))
        assert omega_star(alpha).is_tree_supported()

    def test_exponential_image_multiplicative(self):
        alpha = exp_gl(random_logarithmic(4, random.Random(11)))
        assert omega_star(alpha).is_multiplicative()

    def test_useries_merges_representatives(self):
        s = USeries(3, {F("(())()"): 1, F("()(())"): 1})
        assert s[F("()(())")] == 2
        assert s.support() == [F("()(())")]
        assert not s.is_multiplicative()
