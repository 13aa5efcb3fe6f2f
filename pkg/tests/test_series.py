import json
import random
from fractions import Fraction

import pytest

from golden import COMPOSE_EXPANSION
from helpers import F
from otree.forest import EMPTY, forests_up_to
from otree.grafting import gl_product
from otree.lincomb import LinComb
from otree.series import (
    Series,
    SeriesError,
    compose_gl,
    counit_series,
    delta_series,
    exp_gl,
    inverse,
    is_exponential,
    is_logarithmic,
    log_gl,
    lyndon_words,
    random_logarithmic,
    series_to_text,
)

NODE = F("()")


def symbolic(cutoff, forests, seed):
    rng = random.Random(seed)
    return Series(cutoff, {f: rng.randint(2, 97) for f in forests})


class TestSeries:
    def test_cutoff_enforced(self):
        with pytest.raises(SeriesError):
            Series(1, {F("(())"): 1})
        with pytest.raises(SeriesError):
            Series(-1)

    def test_zero_dropped_and_access(self):
        s = Series(2, {NODE: 0, F("(())"): 2})
        assert s.support() == [F("(())")]
        assert s(F("(())")) == 2 and s[NODE] == 0

    def test_arithmetic(self):
        a, b = delta_series("()", 2), delta_series("(())", 2, 3)
        assert (a + b)[F("(())")] == 3
        assert (a - a) == Series(2)
        assert (2 * a / 4)[NODE] == Fraction(1, 2)
        with pytest.raises(SeriesError):
            a + delta_series("()", 3)

    def test_truncate(self):
        s = Series(3, {NODE: 1, F("((()))"): 1})
        assert s.truncate(2) == Series(2, {NODE: 1})

    def test_colors(self):
        s = delta_series("a()", 1)
        assert s.colors == ("a",)
        assert len(s.forests()) == 2
        assert counit_series(2).colors == ("0",)

    def test_json_roundtrip(self):
        s = Series(3, {EMPTY: 1, NODE: Fraction(-1, 2), F("b(())"): 4})
        data = s.to_json()
        assert data["cutoff"] == 3 and data["colors"] == ["0", "b"]
        assert data["terms"][0] == {"coeff": "1", "forest": ""}
        assert Series.from_json(json.dumps(data)) == s
        assert "colors" not in delta_series("()", 1).to_json()

    @pytest.mark.parametrize("text", ['{"terms": []}', '{"cutoff": 2, "terms": [{"forest": "()"}]}', '{"cutoff": "x"}'])
    def test_json_errors(self, text):
        with pytest.raises(SeriesError):
            Series.from_json(text)

    def test_text(self):
        assert series_to_text(Series(1, {EMPTY: 1, NODE: Fraction(1, 2)})) == "cutoff 1\n1\t𝟙\n1/2\t()"


class TestComposition:
    def test_worked_expansion(self):
        target, terms = COMPOSE_EXPANSION
        alpha = symbolic(3, forests_up_to(3), 1)
        beta = symbolic(3, forests_up_to(3), 2)
        expected = sum(c * alpha[F(l)] * beta[F(r)] for c, l, r in terms)
        assert compose_gl(alpha, beta)[F(target)] == expected

    def test_matches_gl_pairing(self):
        alpha = symbolic(4, forests_up_to(4), 3)
        beta = symbolic(4, forests_up_to(4), 4)
        gamma = compose_gl(alpha, beta)
        for w in forests_up_to(4):
            total = 0
            for a in forests_up_to(4):
                for b in forests_up_to(4):
                    total += alpha[a] * beta[b] * gl_product(LinComb({a: 1}), LinComb({b: 1}))[w]
            assert gamma[w] == total

    def test_unit(self):
        alpha = symbolic(3, forests_up_to(3), 5)
        eps = counit_series(3)
        assert compose_gl(eps, alpha) == alpha == compose_gl(alpha, eps)

    def test_cutoff_mismatch(self):
        with pytest.raises(SeriesError):
            compose_gl(counit_series(2), counit_series(3))

    def test_exponentials_closed(self):
        rng = random.Random(9)
        a = exp_gl(random_logarithmic(4, rng))
        b = exp_gl(random_logarithmic(4, rng))
        assert is_exponential(compose_gl(a, b))

    def test_inverse(self):
        eps = counit_series(4)
        assert inverse(eps) == eps
        alpha = exp_gl(delta_series("()", 4))
        assert compose_gl(alpha, inverse(alpha)) == eps
        assert inverse(alpha)[NODE] == -alpha[NODE]
        with pytest.raises(SeriesError):
            inverse(delta_series("()", 2))


class TestPredicates:
    def test_single_node_is_logarithmic(self):
        assert is_logarithmic(delta_series("()", 3))

    def test_word_is_not_logarithmic(self):
        assert not is_logarithmic(delta_series("()()", 2))

    def test_commutator(self):
        comm = Series(3, {F("()(())"): 1, F("(())()"): -1})
        assert is_logarithmic(comm)
        assert not is_exponential(comm)

    def test_exponential_needs_unit(self):
        assert not is_exponential(Series(2))
        assert is_exponential(counit_series(2))


class TestExpLog:
    def test_exp_of_node(self):
        s = exp_gl(delta_series("()", 2))
        assert s == Series(2, {EMPTY: 1, NODE: 1, F("()()"): Fraction(1, 2), F("(())"): Fraction(1, 2)})
        assert is_exponential(exp_gl(delta_series("()", 4)))

    def test_exp_of_zero(self):
        assert exp_gl(Series(3)) == counit_series(3)

    def test_roundtrip(self):
        rng = random.Random(2)
        for _ in range(3):
            alpha = random_logarithmic(4, rng)
            assert is_logarithmic(alpha)
            beta = exp_gl(alpha)
            assert log_gl(beta) == alpha
            assert exp_gl(log_gl(beta)) == beta

    def test_predicate_violations(self):
        with pytest.raises(SeriesError):
            exp_gl(counit_series(2))
        with pytest.raises(SeriesError):
            log_gl(delta_series("()", 2))


class TestRandom:
    def test_range_and_determinism(self):
        a = random_logarithmic(4, random.Random(5))
        b = random_logarithmic(4, random.Random(5))
        assert a == b
        assert all(-3 <= c <= 3 for c in a.coeffs.values())

    def test_colored(self):
        a = random_logarithmic(3, random.Random(1), colors=("a", "b"))
        assert is_logarithmic(a)

    def test_lyndon_counts(self):
        # necklace counts over a two-letter alphabet
        words = lyndon_words("ab", 5, lambda _: 1)
        assert [sum(1 for w in words if len(w) == n) for n in range(1, 6)] == [2, 1, 2, 3, 6]
