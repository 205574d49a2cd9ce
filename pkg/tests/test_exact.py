from __future__ import annotations

import itertools
import random

import pytest

from _gen import random_instance
from itempricing import (
    PricingInstance,
    ValueDistribution,
    expected_revenue,
    expected_revenue_naive,
    grid_solve,
    restricted_solve,
)
from itempricing.errors import GridTooLarge, NonIntegerValues


def test_grid_matches_enumeration():
    rng = random.Random(41)
    for _ in range(30):
        inst = random_instance(rng, max_n=3, max_value=7)
        p, r = grid_solve(inst)
        axes = [range(int(a), int(b) + 1) for a, b in zip(inst.lows, inst.highs)]
        assert r == max(expected_revenue_naive(inst, q) for q in itertools.product(*axes))
        assert expected_revenue(inst, p) == r


def test_tie_goes_to_lexicographically_smallest():
    inst = PricingInstance((ValueDistribution.point(3), ValueDistribution.point(3)))
    assert grid_solve(inst) == ((3, 3), 3)
    # prices 1 and 2 both earn 1; the smaller one is reported
    inst = PricingInstance((ValueDistribution((1, 2), ("1/2", "1/2")),))
    assert grid_solve(inst) == ((1,), 1)


def test_non_integer_rejected():
    inst = PricingInstance((ValueDistribution(("1/2",), (1,)),))
    with pytest.raises(NonIntegerValues):
        grid_solve(inst)


def test_budget_is_hard_limit():
    inst = PricingInstance((ValueDistribution((0, 100), ("1/2", "1/2")),) * 3)
    with pytest.raises(GridTooLarge):
        grid_solve(inst, budget=1000)
    with pytest.raises(GridTooLarge):
        restricted_solve(inst, [range(20)] * 3, budget=100)


def test_restricted_never_beats_grid():
    rng = random.Random(42)
    for _ in range(30):
        inst = random_instance(rng, max_n=3, max_value=9)
        best = grid_solve(inst)[1]
        cands = [it.values for it in inst.items]
        assert restricted_solve(inst, cands)[1] <= best


def test_restricted_argument_checks():
    inst = PricingInstance((ValueDistribution.point(3),))
    with pytest.raises(ValueError):
        restricted_solve(inst, [[1], [2]])
    with pytest.raises(ValueError):
        restricted_solve(inst, [[]])
