"""Optimal pricing when every item has at most two support values.

Under the non-degeneracy conditions (high values strictly increasing, low
values distinct, gaps ``t_i = b_i - a_i`` distinct, ``a_i > 0``,
``0 < q_i < 1``) an optimum lies in a candidate set of at most
``1 + n(n+1)/2`` vectors: the all-high vector ``b`` plus, for every item
``k`` priced at its low value, a suffix-monotone choice of discounts
``b_i - t_k`` over the items after ``k`` with larger gaps.

Degenerate inputs are perturbed symbolically, shifting item ``i``'s two
values by ``i*eps`` and ``2i*eps``, and solved over :class:`EpsAffine`
numbers; the answer is the constant part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import DegenerateInstance, LimitMismatch, SupportTooLarge
from .model import EpsAffine, PricingInstance, ValueDistribution, limit, to_rational
from .revenue import expected_revenue


@dataclass(frozen=True)
class Support2Instance:
    """Per-item ``(a_i, b_i, q_i)`` with ``q_i = Pr[value = b_i]``.

    ``order[k]`` is the original index of item ``k`` after any re-sorting.
    """

    low: tuple
    high: tuple
    q: tuple[Fraction, ...]
    order: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        n = len(self.low)
        if not (len(self.high) == len(self.q) == n):
            raise ValueError("low, high and q must have equal length")
        if not self.order:
            object.__setattr__(self, "order", tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.low)

    @property
    def gaps(self) -> tuple:
        return tuple(b - a for a, b in zip(self.low, self.high))

    def to_instance(self) -> PricingInstance:
        return PricingInstance(
            tuple(
                ValueDistribution((a, b), (1 - q, q))
                for a, b, q in zip(self.low, self.high, self.q)
            )
        )


def support2_instance(low: Sequence[Any], high: Sequence[Any], q: Sequence[Any]) -> PricingInstance:
    """PricingInstance from raw ``(a_i, b_i, q_i)``; ``q_i`` in {0, 1} or ``a_i == b_i`` collapse to a point."""
    items = []
    for a, b, qi in zip(low, high, q):
        a, b, qi = to_rational(a), to_rational(b), to_rational(qi)
        if a > b:
            a, b, qi = b, a, 1 - qi
        if a == b or qi == 1:
            items.append(ValueDistribution.point(b))
        elif qi == 0:
            items.append(ValueDistribution.point(a))
        else:
            items.append(ValueDistribution((a, b), (1 - qi, qi)))
    return PricingInstance(tuple(items))


def is_nondegenerate(inst: Support2Instance) -> bool:
    n = inst.n
    b, a, t = inst.high, inst.low, inst.gaps
    return (
        all(b[k] < b[k + 1] for k in range(n - 1))
        and len(set(a)) == n
        and len(set(t)) == n
        and all(x > 0 for x in a)
        and all(0 < q < 1 for q in inst.q)
        and all(x > 0 for x in t)
    )


def enumerate_candidates(inst: Support2Instance) -> list[tuple]:
    """The candidate set ``A`` for a non-degenerate instance, ``b`` first."""
    if not is_nondegenerate(inst):
        raise DegenerateInstance("candidate enumeration needs a non-degenerate instance")
    a, b, t = inst.low, inst.high, inst.gaps
    n = inst.n
    cands = [tuple(b)]
    for k in range(n):
        above = [i for i in range(k + 1, n) if t[i] > t[k]]
        for cut in range(len(above) + 1):
            p = list(b)
            p[k] = a[k]
            for i in above[cut:]:
                p[i] = b[i] - t[k]
            cands.append(tuple(p))
    return cands


def solve_nondegenerate(inst: Support2Instance) -> tuple[tuple, Any]:
    """Best candidate and its revenue; first candidate wins ties."""
    cands = enumerate_candidates(inst)
    full = inst.to_instance()
    best_p, best_r = None, None
    for p in cands:
        r = expected_revenue(full, p)
        if best_r is None or r > best_r:
            best_p, best_r = p, r
    return best_p, best_r


def perturb_instance(inst: PricingInstance) -> Support2Instance:
    """Symbolically perturbed, non-degenerate copy of a support-2 instance.

    Items are stably sorted by their highest value first; ``order`` records
    the original indices.  Item ``k`` (1-based after sorting) gets values
    ``{a + k*eps, b + 2k*eps}``; a point mass ``{b}`` becomes
    ``{b + k*eps, b + 2k*eps}`` with probability 1/2 each.
    """
    if inst.max_support > 2:
        raise SupportTooLarge(f"an item has {inst.max_support} support values; at most 2 allowed")
    order = tuple(sorted(range(inst.n), key=lambda i: inst.items[i].high))
    low, high, q = [], [], []
    for k, idx in enumerate(order, start=1):
        it = inst.items[idx]
        if len(it) == 2:
            low.append(EpsAffine(it.values[0], k))
            high.append(EpsAffine(it.values[1], 2 * k))
            q.append(it.probs[1])
        else:
            low.append(EpsAffine(it.values[0], k))
            high.append(EpsAffine(it.values[0], 2 * k))
            q.append(Fraction(1, 2))
    return Support2Instance(tuple(low), tuple(high), tuple(q), order)


def solve_support2(inst: PricingInstance) -> tuple[tuple[Fraction, ...], Fraction]:
    """Optimal prices and revenue for any instance with supports of size at most 2.

    The returned prices are the epsilon-free part of the best perturbed
    candidate, mapped back to the original item order; their revenue on the
    unperturbed instance is checked against the limit before returning.
    """
    pert = perturb_instance(inst)
    best_p, best_r = solve_nondegenerate(pert)
    revenue = limit(best_r)
    prices = [Fraction(0)] * inst.n
    for k, idx in enumerate(pert.order):
        prices[idx] = limit(best_p[k])
    prices = tuple(prices)
    actual = expected_revenue(inst, prices)
    if actual != revenue:
        raise LimitMismatch(
            f"prices {prices} earn {actual} but the perturbed limit is {revenue}"
        )
    return prices, revenue
