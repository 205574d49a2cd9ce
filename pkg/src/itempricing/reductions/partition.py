"""Partition -> pricing with three-point supports ``{0, a, b}``.

Item ``i`` has value ``b`` with probability ``q_i = c_i / M`` and value ``a``
with probability ``r_i``; ``r_i`` is tuned so that ``b q_i = a(q_i + r_i) -
a r_i t_i`` and the revenue of any price vector in ``{a, b}^n`` is, up to
third-order terms, ``L + (sum_S c)(sum_T c) / M^2`` where ``S`` is the set of
items priced at ``a``.  An equipartition exists iff the optimum reaches
``t_star``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Sequence

from ..errors import InvalidProbabilities, OddSum
from ..model import PricingInstance, ValueDistribution

LOW_VALUE = 1
HIGH_VALUE = 3


@dataclass(frozen=True)
class PartitionInstance:
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(x) for x in self.c)
        if not c:
            raise ValueError("Partition needs at least one integer")
        if any(x < 1 for x in c):
            raise ValueError("Partition integers must be positive")
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.c)

    def has_equipartition(self) -> bool:
        total = sum(self.c)
        if total % 2:
            return False
        reachable = {0}
        for x in self.c:
            reachable |= {s + x for s in reachable}
        return total // 2 in reachable


@dataclass(frozen=True)
class Support3Construction:
    """All intermediate quantities of the reduction; item order follows ``c``."""

    c: tuple[int, ...]
    order: tuple[int, ...]  # order[k] = index of c[k] in the caller's input
    instance: PricingInstance
    a: int
    b: int
    M: int
    N: int
    q: tuple[Fraction, ...]
    r: tuple[Fraction, ...]
    t: tuple[Fraction, ...]
    L1: Fraction
    L2: Fraction
    L: Fraction
    H: Fraction
    t_star: Fraction

    @property
    def n(self) -> int:
        return len(self.c)


def partition_to_support3(C: PartitionInstance | Sequence[int], scale: int = 1) -> Support3Construction:
    """Build the three-point pricing instance for a Partition input.

    Items are reordered by decreasing ``c`` (stable) so the first is a
    maximum.  ``M = scale * 2^n * c_1^3``; a larger ``scale`` shrinks the
    higher-order error terms relative to the decision gap.
    """
    if not isinstance(C, PartitionInstance):
        C = PartitionInstance(tuple(C))
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    total = sum(C.c)
    if total % 2:
        raise OddSum(f"sum of c is {total}; an odd total has no equipartition")
    order = tuple(sorted(range(C.n), key=lambda k: -C.c[k]))
    c = tuple(C.c[k] for k in order)
    n = len(c)
    a, b = LOW_VALUE, HIGH_VALUE
    M = scale * 2**n * c[0] ** 3
    N = 2**n * c[0] ** 2
    q = tuple(Fraction(ci, M) for ci in c)
    sum_q = sum(q, Fraction(0))
    t = tuple(Fraction(b, 2 * a) * (sum_q - qi) for qi in q)
    r = []
    for qi, ti in zip(q, t):
        if ti >= 1:
            raise InvalidProbabilities(f"t_i = {ti} >= 1; raise the scale")
        ri = Fraction(b - a, a) / (1 - ti) * qi
        if qi + ri >= 1:
            raise InvalidProbabilities(f"q_i + r_i = {qi + ri} >= 1; raise the scale")
        r.append(ri)
    r = tuple(r)
    items = tuple(
        ValueDistribution((0, a, b), (1 - qi - ri, ri, qi)) for qi, ri in zip(q, r)
    )
    L1 = b * sum_q
    pair_sum = sum((q[i] * q[j] for i in range(n) for j in range(i + 1, n)), Fraction(0))
    L2 = -b * pair_sum
    L = L1 + L2
    H = Fraction(total, 2)
    t_star = L + (H * H - Fraction(1, 2)) / (M * M)
    return Support3Construction(
        c=c, order=order, instance=PricingInstance(items), a=a, b=b, M=M, N=N,
        q=q, r=r, t=t, L1=L1, L2=L2, L=L, H=H, t_star=t_star,
    )


def low_priced_items(cons: Support3Construction, prices: Sequence) -> frozenset[int]:
    """``S(p)``: items priced at the low value ``a``."""
    return frozenset(i for i, p in enumerate(prices) if p == cons.a)


def quadratic_approx_support3(cons: Support3Construction, S: Collection[int]) -> Fraction:
    """``L + (sum_{i in S} c_i)(sum_{j not in S} c_j) / M^2``."""
    S = set(S)
    if not S <= set(range(cons.n)):
        raise ValueError(f"subset {sorted(S)} is not within 0..{cons.n - 1}")
    inside = sum(cons.c[i] for i in S)
    outside = sum(cons.c) - inside
    return cons.L + Fraction(inside * outside, cons.M * cons.M)


def shift_positive(inst: PricingInstance) -> PricingInstance:
    """Add 1 to every value and append an item worth 1 with certainty; revenue rises by exactly 1."""
    items = tuple(ValueDistribution(tuple(v + 1 for v in it.values), it.probs) for it in inst.items)
    return PricingInstance(items + (ValueDistribution.point(1),))
