from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from itempricing import EpsAffine, PricingInstance, ValueDistribution, scale_to_integer, validate_instance
from itempricing.errors import (
    DimensionMismatch,
    EmptyInstance,
    NegativeValue,
    NonAscendingSupport,
    NonPositiveProb,
    ProbSumNotOne,
    ValidationError,
)
from itempricing.model import limit, price_vector, to_rational

fracs = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100)


class TestToRational:
    def test_accepts_strings_and_ints(self):
        assert to_rational("3/4") == Fraction(3, 4)
        assert to_rational(" 7 ") == 7
        assert to_rational(5) == 5

    @pytest.mark.parametrize("bad", [0.5, True, None])
    def test_rejects_non_exact(self, bad):
        with pytest.raises(TypeError):
            to_rational(bad)

    def test_rejects_garbage_string(self):
        with pytest.raises(ValidationError):
            to_rational("1/0")


class TestEpsAffine:
    def test_lexicographic_order(self):
        assert EpsAffine(1, 5) < EpsAffine(2, -100)
        assert EpsAffine(1, -1) < 1 < EpsAffine(1, 1)
        assert EpsAffine(3, 0) == 3

    def test_product_drops_second_order(self):
        x = EpsAffine(2, 3) * EpsAffine(5, 7)
        assert (x.c0, x.c1) == (10, 29)

    def test_hash_matches_plain_rational(self):
        assert hash(EpsAffine(Fraction(1, 2))) == hash(Fraction(1, 2))
        assert {EpsAffine(4): "x"}[4] == "x"

    def test_limit(self):
        assert limit(EpsAffine(7, -3)) == 7
        assert limit(Fraction(2, 3)) == Fraction(2, 3)

    @given(fracs, fracs, fracs, fracs)
    def test_ordering_matches_small_positive_eps(self, a0, a1, b0, b1):
        x, y = EpsAffine(a0, a1), EpsAffine(b0, b1)
        if (a0, a1) == (b0, b1):
            assert x == y
            return
        # a concrete eps small enough to separate the two lines
        gap = abs(a0 - b0)
        slope = abs(a1 - b1) + 1
        eps = gap / (2 * slope) if gap else Fraction(1)
        assert (x < y) == (a0 + a1 * eps < b0 + b1 * eps)

    @given(fracs, fracs, fracs, fracs)
    def test_addition_is_componentwise(self, a0, a1, b0, b1):
        s = EpsAffine(a0, a1) + EpsAffine(b0, b1)
        assert (s.c0, s.c1) == (a0 + b0, a1 + b1)
        d = EpsAffine(a0, a1) - EpsAffine(b0, b1)
        assert (d.c0, d.c1) == (a0 - b0, a1 - b1)


class TestValueDistribution:
    def test_valid(self):
        d = ValueDistribution((8, 12), ("1/2", "1/2"))
        assert d.low == 8 and d.high == 12 and d.prob_of(12) == Fraction(1, 2) and d.prob_of(9) == 0

    @pytest.mark.parametrize(
        "values, probs, err",
        [
            ((), (), EmptyInstance),
            ((2, 1), ("1/2", "1/2"), NonAscendingSupport),
            ((1, 1), ("1/2", "1/2"), NonAscendingSupport),
            ((1, 2), ("1/2", "1/3"), ProbSumNotOne),
            ((1, 2), (0, 1), NonPositiveProb),
            ((-1,), (1,), NegativeValue),
        ],
    )
    def test_invalid(self, values, probs, err):
        with pytest.raises(err):
            ValueDistribution(values, probs)

    def test_errors_are_value_errors(self):
        assert issubclass(ProbSumNotOne, ValueError)


class TestInstance:
    def test_validate_instance_record(self):
        inst = validate_instance({"items": [{"values": ["10"], "probs": ["1"]}, {"values": [8, 12], "probs": ["1/2", "1/2"]}]})
        assert inst.n == 2 and inst.lows == (10, 8) and inst.highs == (10, 12) and inst.max_support == 2

    def test_empty(self):
        with pytest.raises(EmptyInstance):
            validate_instance({"items": []})

    def test_float_values_rejected(self):
        with pytest.raises(ValidationError):
            validate_instance({"items": [{"values": [1.5], "probs": [1]}]})

    def test_scale_to_integer(self):
        inst = PricingInstance.from_pairs([[("1/2", "1/3"), ("5/3", "2/3")], [(2, 1)]])
        scaled, k = scale_to_integer(inst)
        assert k == 6
        assert scaled.is_integral() and scaled.items[0].values == (3, 10)
        assert not inst.is_integral()

    def test_price_vector_checks(self):
        with pytest.raises(DimensionMismatch):
            price_vector([1, 2], 3)
        with pytest.raises(ValidationError):
            price_vector([-1])
