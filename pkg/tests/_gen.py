"""Seeded random instance generators shared by the test modules."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from itempricing import PricingInstance, ValueDistribution, support2_instance


def dyadic_probs(rng: random.Random, k: int, bits: int = 4) -> list[Fraction]:
    """``k`` positive dyadic probabilities summing to one."""
    total = 2**bits
    cuts = sorted(rng.sample(range(1, total), k - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    return [Fraction(x, total) for x in parts]


def random_instance(
    rng: random.Random, max_n: int = 5, max_support: int = 3, max_value: int = 20, min_value: int = 0
) -> PricingInstance:
    items = []
    for _ in range(rng.randint(1, max_n)):
        k = rng.randint(1, max_support)
        values = sorted(rng.sample(range(min_value, max_value + 1), k))
        items.append(ValueDistribution(tuple(values), tuple(dyadic_probs(rng, k))))
    return PricingInstance(tuple(items))


def grid_size(inst: PricingInstance) -> int:
    return math.prod(int(b - a) + 1 for a, b in zip(inst.lows, inst.highs))


def random_support2(rng: random.Random, max_n: int = 5, max_value: int = 30, max_grid: int = 40_000):
    """A support-2 instance whose integer box stays within ``max_grid`` points.

    About half of the draws force a degeneracy: repeated highs, repeated
    gaps, point masses, or raw ``q`` of 0 or 1.
    """
    while True:
        n = rng.randint(1, max_n)
        low, high, q = [], [], []
        mode = rng.choice(["plain", "dup_b", "dup_t", "point", "q01", "mixed"])
        for _ in range(n):
            a = rng.randint(0, max_value - 1)
            b = rng.randint(a + 1, max_value)
            low.append(a)
            high.append(b)
            q.append(Fraction(rng.randint(1, 15), 16))
        if n >= 2 and mode in ("dup_b", "mixed"):
            i, j = rng.sample(range(n), 2)
            high[j] = high[i]
            low[j] = rng.randint(0, high[j] - 1)
        if n >= 2 and mode in ("dup_t", "mixed"):
            i, j = rng.sample(range(n), 2)
            gap = high[i] - low[i]
            if high[j] >= gap:
                low[j] = high[j] - gap
        if mode in ("point", "mixed"):
            k = rng.randrange(n)
            low[k] = high[k]
        if mode in ("q01", "mixed"):
            k = rng.randrange(n)
            q[k] = Fraction(rng.randint(0, 1))
        inst = support2_instance(low, high, q)
        if grid_size(inst) <= max_grid:
            return inst


def random_prices_in_box(rng: random.Random, inst: PricingInstance, denom: int = 4) -> tuple[Fraction, ...]:
    out = []
    for a, b in zip(inst.lows, inst.highs):
        lo, hi = int(a * denom), int(b * denom)
        out.append(Fraction(rng.randint(lo, hi), denom))
    return tuple(out)
