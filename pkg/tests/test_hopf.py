import pytest
from hypothesis import given

from golden import ANTIPODE, COPRODUCT
from helpers import F, L, lincombs
from otree.forest import EMPTY, b_plus, forests_up_to, order, print_forest
from otree.hopf import (
    antipode_N,
    antipode_N_cut_recursive,
    antipode_N_recursive,
    convolution,
    coproduct_F,
    coproduct_N,
    coproduct_N_recursive,
    counit,
    identity,
    reversal_SF,
    unit,
    unit_counit,
)
from otree.lincomb import ONE, ZERO, LinComb, TensorComb, shuffle, spr, tensor, tensor_map, twist


def T(*terms) -> TensorComb:
    return TensorComb([((F(l), F(r)), c) for c, l, r in terms])


def single(f) -> LinComb:
    return LinComb({f: 1})


@pytest.mark.parametrize("forest, expected", COPRODUCT)
def test_coproduct_table(forest, expected):
    assert coproduct_N(L(forest)) == T(*expected)
    assert coproduct_N_recursive(L(forest)) == T(*expected)


@pytest.mark.parametrize("forest, expected", ANTIPODE)
def test_antipode_table(forest, expected):
    for method in (antipode_N, antipode_N_recursive, antipode_N_cut_recursive):
        assert method(L(forest)) == L(*expected)


def test_unit_and_counit():
    assert counit(ONE) == 1
    assert counit(L("(())") + 3 * ONE) == 3
    assert unit(5) == 5 * ONE
    assert unit_counit(L("()") + ONE) == ONE


@given(lincombs(2), lincombs(2))
def test_counit_multiplicative(a, b):
    assert counit(shuffle(a, b)) == counit(a) * counit(b)


def test_coproduct_of_unit():
    assert coproduct_N(ONE) == T((1, "", ""))
    assert coproduct_F(ONE) == T((1, "", ""))


def test_single_tree_recursion():
    tau = F("((()))")
    inner = coproduct_N(single(tau[0].children))
    lifted = TensorComb([((l, (b_plus(r),)), c) for (l, r), c in inner.items()])
    assert coproduct_N(single(tau)) == T((1, "((()))", "")) + lifted


def test_coproduct_orders_add_up():
    for f in forests_up_to(5):
        for l, r in coproduct_N(single(f)):
            assert order(l) + order(r) == order(f)


def test_reversal():
    assert reversal_SF(L("()(())")) == L("(())()")
    assert reversal_SF(L("()")) == -L("()")


@given(lincombs(2), lincombs(2))
def test_reversal_respects_shuffle(a, b):
    assert reversal_SF(shuffle(a, b)) == shuffle(reversal_SF(a), reversal_SF(b))


def test_deconcatenation():
    assert coproduct_F(L("()(())")) == T((1, "()(())", ""), (1, "()", "(())"), (1, "", "()(())"))


def test_deconcatenation_recursion():
    for f in forests_up_to(4):
        if not f:
            continue
        w, a = f[:-1], f[-1:]
        rhs = TensorComb({(f, EMPTY): 1})
        rhs = rhs + TensorComb([((l, r + a), c) for (l, r), c in coproduct_F(single(w)).items()])
        assert coproduct_F(single(f)) == rhs


def test_convolution_examples():
    assert convolution(antipode_N, identity, L("(())")) == ZERO
    assert convolution(identity, identity, ONE) == ONE
    assert convolution(reversal_SF, identity, L("()(())"), which="F") == ZERO
    with pytest.raises(ValueError):
        convolution(identity, identity, ONE, which="X")


@pytest.mark.parametrize("f", forests_up_to(4), ids=lambda f: print_forest(f) or "unit")
def test_antipode_is_convolution_inverse(f):
    a = single(f)
    assert convolution(antipode_N, identity, a) == unit_counit(a)
    assert convolution(identity, antipode_N, a) == unit_counit(a)


@given(lincombs(3), lincombs(2))
def test_bialgebra_compatibility(a, b):
    assert coproduct_N(shuffle(a, b)) == spr(coproduct_N(a), coproduct_N(b))


@given(lincombs(4))
def test_antipode_involution_and_twist(a):
    assert antipode_N(antipode_N(a)) == a
    assert tensor_map(antipode_N, antipode_N, coproduct_N(a)) == twist(coproduct_N(antipode_N(a)))


def test_tensor_helper():
    assert T((1, "()", "")) == tensor(L("()"), ONE)
