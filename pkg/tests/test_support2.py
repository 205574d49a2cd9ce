from __future__ import annotations

import random
from fractions import Fraction

import pytest

from _gen import random_support2
from itempricing import (
    EpsAffine,
    PricingInstance,
    Support2Instance,
    ValueDistribution,
    enumerate_candidates,
    expected_revenue,
    grid_solve,
    is_nondegenerate,
    perturb_instance,
    solve_nondegenerate,
    solve_support2,
    support2_instance,
)
from itempricing.errors import DegenerateInstance, SupportTooLarge

TWO = Support2Instance(low=(1, 2), high=(3, 6), q=(Fraction(1, 2), Fraction(1, 2)))


def test_candidate_set_of_two_item_instance():
    assert set(enumerate_candidates(TWO)) == {(3, 6), (1, 4), (1, 6), (3, 2)}
    assert len(enumerate_candidates(TWO)) <= 1 + 2 * 3 // 2


def test_two_item_optimum():
    p, r = solve_nondegenerate(TWO)
    assert r == Fraction(15, 4)
    assert r == grid_solve(TWO.to_instance())[1]


@pytest.mark.parametrize(
    "inst",
    [
        Support2Instance((1, 2), (3, 3), (Fraction(1, 2),) * 2),  # equal highs
        Support2Instance((1, 1), (3, 4), (Fraction(1, 2),) * 2),  # equal lows
        Support2Instance((1, 2), (3, 4), (Fraction(1, 2),) * 2),  # equal gaps
        Support2Instance((0, 2), (3, 5), (Fraction(1, 2), Fraction(1, 3))),  # zero low
        Support2Instance((1,), (3,), (Fraction(1),)),  # q = 1
    ],
)
def test_degenerate_rejected(inst):
    assert not is_nondegenerate(inst)
    with pytest.raises(DegenerateInstance):
        enumerate_candidates(inst)


def test_perturbation_is_nondegenerate():
    inst = support2_instance((0, 0, 4), (5, 5, 4), ("1/2", "1/2", "1/3"))
    pert = perturb_instance(inst)
    assert is_nondegenerate(pert)
    assert all(isinstance(x, EpsAffine) for x in pert.low + pert.high)


def test_support2_instance_collapses():
    inst = support2_instance((1, 2, 3), (4, 2, 5), (0, "1/2", 1))
    assert [it.values for it in inst.items] == [(1,), (2,), (5,)]


def test_support_three_rejected():
    inst = PricingInstance((ValueDistribution((1, 2, 3), ("1/3", "1/3", "1/3")),))
    with pytest.raises(SupportTooLarge):
        solve_support2(inst)


def test_all_equal_instance():
    inst = support2_instance((2, 2, 2), (5, 5, 5), ("1/2", "1/2", "1/2"))
    p, r = solve_support2(inst)
    assert r == grid_solve(inst)[1]
    assert expected_revenue(inst, p) == r


def test_worked_example():
    inst = PricingInstance((ValueDistribution.point(10), ValueDistribution((8, 12), ("1/2", "1/2"))))
    assert solve_support2(inst) == ((10, 12), 11)


def test_random_against_grid():
    rng = random.Random(31)
    for _ in range(80):
        inst = random_support2(rng, max_n=4, max_value=15, max_grid=5000)
        p, r = solve_support2(inst)
        assert r == grid_solve(inst)[1]
        assert expected_revenue(inst, p) == r
        n = inst.n
        assert len(enumerate_candidates(perturb_instance(inst))) <= 1 + n * (n + 1) // 2
