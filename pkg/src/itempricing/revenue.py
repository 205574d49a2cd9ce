"""Expected revenue of a price vector for a unit-demand buyer.

Two evaluators are provided.  :func:`expected_revenue_naive` walks every
valuation vector and asks :func:`buyer_choice` who buys; it supports several
tie-breaking rules and exists mostly as a test oracle.  :func:`expected_revenue`
uses the per-item factorisation: given that item ``i`` wins with value ``s``,
each other item ``j`` independently loses, and the set of losing values of
``j`` is a prefix of its sorted support.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import DimensionMismatch, EnumerationTooLarge, ValueNotInSupport
from .model import EpsAffine, PricingInstance, price_vector

DEFAULT_ENUMERATION_BUDGET = 10**6


class TieBreakRule(enum.Enum):
    """Which of several utility-maximising items the buyer takes."""

    MAX_PRICE = "max-price"  # highest price, then smallest index
    MIN_INDEX = "min-index"
    MAX_INDEX = "max-index"


def buyer_choice(
    inst: PricingInstance,
    v: Sequence[Any],
    p: Sequence[Any],
    rule: TieBreakRule = TieBreakRule.MAX_PRICE,
) -> Optional[int]:
    """Index (0-based) of the item bought at valuation ``v`` and prices ``p``, or None."""
    n = inst.n
    if len(v) != n or len(p) != n:
        raise DimensionMismatch(f"instance has {n} items; got |v|={len(v)}, |p|={len(p)}")
    for i, (vi, it) in enumerate(zip(v, inst.items)):
        if vi not in it.values:
            raise ValueNotInSupport(f"value {vi} is not in the support of item {i}")
    return _choose(v, p, rule)


def _choose(v: Sequence[Any], p: Sequence[Any], rule: TieBreakRule) -> Optional[int]:
    utils = [vi - pi for vi, pi in zip(v, p)]
    best = max(utils)
    if best < 0:
        return None
    tied = [i for i, u in enumerate(utils) if u == best]
    if rule is TieBreakRule.MIN_INDEX:
        return tied[0]
    if rule is TieBreakRule.MAX_INDEX:
        return tied[-1]
    top = max(p[i] for i in tied)
    return next(i for i in tied if p[i] == top)


def _zero_like(prices: Sequence[Any]):
    if any(isinstance(x, EpsAffine) for x in prices):
        return EpsAffine(0, 0)
    return Fraction(0)


def expected_revenue_naive(
    inst: PricingInstance,
    p: Sequence[Any],
    rule: TieBreakRule = TieBreakRule.MAX_PRICE,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
):
    """Sum ``Pr[v] * price of the chosen item`` over every valuation vector."""
    p = price_vector(p, inst.n)
    size = math.prod(len(it) for it in inst.items)
    if size > budget:
        raise EnumerationTooLarge(f"{size} valuation vectors exceed the budget of {budget}")
    total = _zero_like(p)
    supports = [list(zip(it.values, it.probs)) for it in inst.items]
    for combo in itertools.product(*supports):
        winner = _choose([c[0] for c in combo], p, rule)
        if winner is None:
            continue
        weight = math.prod((c[1] for c in combo), start=Fraction(1))
        total = total + p[winner] * weight
    return total


class _Evaluator:
    """Precomputed integer tables for the factorised win-probability formula.

    Item ``i`` carries integer weights ``w_i`` over a common denominator ``d_i``
    and prefix sums of those weights; every win probability is an integer
    numerator over ``D = prod(d_i)``.
    """

    def __init__(self, inst: PricingInstance) -> None:
        self.n = inst.n
        self.values = []
        self.weights = []
        self.prefix = []
        self.denoms = []
        for it in inst.items:
            d = math.lcm(*(q.denominator for q in it.probs))
            w = [q.numerator * (d // q.denominator) for q in it.probs]
            # integral Fractions become ints: int arithmetic is much faster
            vals = [
                v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v
                for v in it.values
            ]
            self.values.append(vals)
            self.weights.append(w)
            self.prefix.append(list(itertools.accumulate(w, initial=0)))
            self.denoms.append(d)
        self.D = math.prod(self.denoms)

    def gamma_numerators(self, p: Sequence[Any]) -> list[int]:
        n = self.n
        out = [0] * n
        for i in range(n):
            pi = p[i]
            vals_i = self.values[i]
            w_i = self.weights[i]
            acc = 0
            for k in range(bisect_left(vals_i, pi), len(vals_i)):
                s = vals_i[k]
                margin = s - pi
                term = w_i[k]
                for j in range(n):
                    if j == i:
                        continue
                    pj = p[j]
                    thr = margin + pj
                    # j loses on ties iff its price is lower, or equal with larger index
                    if pj < pi or (j > i and pj == pi):
                        cut = bisect_right(self.values[j], thr)
                    else:
                        cut = bisect_left(self.values[j], thr)
                    term *= self.prefix[j][cut]
                    if term == 0:
                        break
                acc += term
            out[i] = acc
        return out

    def revenue_numerator(self, p: Sequence[Any]):
        nums = self.gamma_numerators(p)
        return sum((pi * g for pi, g in zip(p, nums) if g), start=0)

    def revenue(self, p: Sequence[Any]):
        return _divide(self.revenue_numerator(p), self.D)


def _divide(x, d: int):
    if isinstance(x, int):
        return Fraction(x, d)
    return x / d


@functools.lru_cache(maxsize=256)
def _evaluator(inst: PricingInstance) -> _Evaluator:
    return _Evaluator(inst)


def evaluator(inst: PricingInstance) -> _Evaluator:
    """Cached evaluator; lets solvers compare integer numerators directly."""
    return _evaluator(inst)


def win_probabilities(inst: PricingInstance, p: Sequence[Any]) -> tuple[Fraction, ...]:
    """``gamma_i = Pr[buyer selects item i]`` under the maximum-price rule."""
    p = price_vector(p, inst.n)
    ev = _evaluator(inst)
    return tuple(Fraction(g, ev.D) for g in ev.gamma_numerators(p))


def expected_revenue(inst: PricingInstance, p: Sequence[Any]):
    """Exact expected revenue under the maximum-price tie-breaking rule.

    Prices may be Fractions or :class:`EpsAffine`; the result has the same kind.
    """
    p = price_vector(p, inst.n)
    ev = _evaluator(inst)
    return ev.revenue(p)


def project_into_box(inst: PricingInstance, p: Sequence[Any]) -> tuple[Fraction, ...]:
    """Move ``p`` into the box ``[a_i, b_i]`` without lowering expected revenue.

    Prices above ``b_i`` are clamped down.  Then, while some ``p_i < a_i``,
    every price below ``a_i`` is raised to ``min(b_j, a_i)``; each round
    removes at least one offender, so at most ``n`` rounds run.
    """
    p = list(price_vector(p, inst.n))
    lows, highs = inst.lows, inst.highs
    p = [min(x, b) for x, b in zip(p, highs)]
    while True:
        below = [i for i in range(inst.n) if p[i] < lows[i]]
        if not below:
            return tuple(p)
        a = lows[below[0]]
        for j in range(inst.n):
            if p[j] < a:
                p[j] = min(highs[j], a)
