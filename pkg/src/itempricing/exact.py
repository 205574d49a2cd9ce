"""Brute-force exact solvers used as ground truth.

Both enumerate price vectors in row-major lexicographic order and keep the
first vector attaining the maximum, so ties resolve to the lexicographically
smallest vector.  Budgets are hard limits: an oracle never truncates.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import GridTooLarge, NonIntegerValues
from .model import PricingInstance, to_rational
from .revenue import evaluator

DEFAULT_GRID_BUDGET = 10**7


def _argmax(inst: PricingInstance, axes: Sequence[Sequence[Any]]) -> tuple[tuple[Fraction, ...], Fraction]:
    ev = evaluator(inst)
    best_num = None
    best_p = None
    for p in itertools.product(*axes):
        num = ev.revenue_numerator(p)
        if best_num is None or num > best_num:
            best_num, best_p = num, p
    prices = tuple(to_rational(x) for x in best_p)
    return prices, Fraction(best_num) / ev.D


def grid_solve(
    inst: PricingInstance, budget: int = DEFAULT_GRID_BUDGET
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Best integer price vector in the box ``[a_i, b_i]`` of an integer-valued instance."""
    if not inst.is_integral():
        raise NonIntegerValues("grid_solve needs integer support values; scale the instance first")
    axes = [range(int(a), int(b) + 1) for a, b in zip(inst.lows, inst.highs)]
    size = math.prod(len(ax) for ax in axes)
    if size > budget:
        raise GridTooLarge(f"grid has {size} points, budget is {budget}")
    return _argmax(inst, axes)


def restricted_solve(
    inst: PricingInstance,
    candidates_per_item: Sequence[Iterable[Any]],
    budget: int = DEFAULT_GRID_BUDGET,
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Best price vector in the Cartesian product of per-item candidate sets.

    Only a global optimum when a structural result guarantees one lies in the product.
    """
    if len(candidates_per_item) != inst.n:
        raise ValueError(f"need {inst.n} candidate sets, got {len(candidates_per_item)}")
    axes = []
    for cands in candidates_per_item:
        vals = sorted({to_rational(c) for c in cands})
        if not vals:
            raise ValueError("empty candidate set")
        axes.append([v.numerator if v.denominator == 1 else v for v in vals])
    size = math.prod(len(ax) for ax in axes)
    if size > budget:
        raise GridTooLarge(f"{size} candidate vectors exceed the budget of {budget}")
    return _argmax(inst, axes)
