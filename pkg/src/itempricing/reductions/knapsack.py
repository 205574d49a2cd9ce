"""Integer Knapsack with repetitions -> pricing with identical distributions.

Every item's value is drawn from one distribution ``Q`` concentrated at 0,
with blocks of support starting at ``v_i = m^(n+i)``.  The masses are
reverse-engineered so that, for prices in ``{v_1..v_n}^n`` with ``x_i``
items priced at ``v_i``, revenue is approximately
``n/N + L^2/(N^2 m^{3n}) - (sum x_i a_i - L)^2 / (N^2 m^{3n})``.

Also holds the Subset-Sum -> Knapsack helper and exhaustive deciders used as
oracles in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from ..errors import (
    InvalidKnapsack,
    MultiplicityMismatch,
    NegativeMass,
    PairProbOutOfRange,
    RemainderNegative,
    SectionMassNegative,
)
from ..model import PricingInstance, ValueDistribution

Pair = tuple[int, int]


@dataclass(frozen=True)
class KnapsackInstance:
    """Pick ``n`` integers from ``a`` (repetition allowed) summing to ``L``."""

    a: tuple[int, ...]
    L: int

    def __post_init__(self) -> None:
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "L", int(self.L))
        if not a:
            raise InvalidKnapsack("need at least one integer")
        if a[0] < 1 or any(x >= y for x, y in zip(a, a[1:])):
            raise InvalidKnapsack("integers must be positive and strictly increasing")
        if self.L < 1:
            raise InvalidKnapsack("target must be positive")
        if self.L > len(a) * a[-1]:
            raise InvalidKnapsack("target exceeds n * a_n; the instance is trivially no")

    @property
    def n(self) -> int:
        return len(self.a)


def multiplicity_vectors(n: int, total: int):
    """All nonnegative integer vectors of length ``n`` summing to ``total``."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in multiplicity_vectors(n - 1, total - first):
            yield (first,) + rest


def knapsack_decide(k: KnapsackInstance) -> Optional[tuple[int, ...]]:
    """A witness multiplicity vector by exhaustive search, or None."""
    for x in multiplicity_vectors(k.n, k.n):
        if sum(xi * ai for xi, ai in zip(x, k.a)) == k.L:
            return x
    return None


def subset_sum_decide(b: Sequence[int], T: int) -> bool:
    return any(
        sum(combo) == T for r in range(len(b) + 1) for combo in itertools.combinations(b, r)
    )


def subsetsum_to_knapsack(b: Sequence[int], T: int) -> KnapsackInstance:
    """Knapsack instance that is a yes-instance iff some subset of ``b`` sums to ``T``.

    With ``K = n^2 T`` (raised to 3 in the single case ``n = 1, T = 2``,
    where ``K = 2`` would let three copies of ``K^2`` reach the target) the integers are ``K^(n+1)``, ``K^i + b_i`` and ``K^i``
    for ``i = 1..n``; the target is ``T + K + ... + K^n + (n+1) K^(n+1)``.
    """
    b = tuple(int(x) for x in b)
    n = len(b)
    if n == 0 or b[0] < 1 or any(x >= y for x, y in zip(b, b[1:])):
        raise InvalidKnapsack("b must be strictly increasing positive integers")
    if T <= b[-1]:
        raise InvalidKnapsack("target must exceed the largest b_i")
    K = max(n * n * T, 3)
    ints = [K ** (n + 1)]
    for i, bi in enumerate(b, start=1):
        ints.append(K**i + bi)
        ints.append(K**i)
    L = T + sum(K**i for i in range(1, n + 1)) + (n + 1) * K ** (n + 1)
    return KnapsackInstance(tuple(sorted(ints)), L)


@dataclass(frozen=True)
class IIDConstruction:
    """Parameters and distribution of the identical-distribution reduction.

    Item indices in ``v``, ``gamma`` etc. are 0-based (entry ``i`` is item
    ``i+1``).  ``p_pair``/``q_pair`` are keyed by 0-based pairs ``(i, j)``,
    ``i < j``.  ``sections[l]`` maps points of ``[1, 2n^3]`` to the masses
    of auxiliary distribution ``l``.
    """

    knapsack: KnapsackInstance
    m: int
    N: int
    v: tuple[int, ...]
    gamma: tuple[Fraction, ...]
    Gamma: tuple[Fraction, ...]
    T: tuple[Fraction, ...]
    t: tuple[Fraction, ...]
    r: tuple[Fraction, ...]
    p_pair: Mapping[Pair, Fraction]
    q_pair: Mapping[Pair, Fraction]
    sections: tuple[Mapping[int, Fraction], ...]
    Q: ValueDistribution
    threshold: Fraction
    scale_unit: int = field(default=0)  # N^2 m^{3n}

    @property
    def n(self) -> int:
        return self.knapsack.n

    @property
    def instance(self) -> PricingInstance:
        return PricingInstance((self.Q,) * self.n)

    @property
    def prices(self) -> tuple[tuple[int, ...], ...]:
        """Per-item candidate prices ``{v_1, ..., v_n}``."""
        return (self.v,) * self.n


def _pair_list(n: int) -> list[Pair]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def section_width(n: int) -> int:
    return 2 * n + 3


def build_section_distributions(n: int, q_pair: Mapping[Pair, Fraction]) -> tuple[dict[int, Fraction], ...]:
    """Distributions over ``[1, 2n^3]`` with ``Pr[alpha > beta] = q_pair[i, j]`` for ``alpha ~ q_i, beta ~ q_j``.

    Pairs label consecutive sections of ``2n + 3`` integers in lexicographic
    order.  Zero masses are omitted.
    """
    pairs = _pair_list(n)
    width = section_width(n)
    if n >= 2 and len(pairs) * width > 2 * n**3:
        raise ValueError("sections do not fit in [1, 2n^3]")
    C = len(pairs)
    dists: list[dict[int, Fraction]] = [dict() for _ in range(n)]
    half = Fraction(1, 2 * C) if C else Fraction(0)
    for s, (i, j) in enumerate(pairs):
        start = s * width + 1

        def point(k: int) -> int:  # k-th smallest integer of this section, 1-based
            return start + k - 1

        dev = C * (q_pair[(i, j)] - Fraction(1, 2))
        for ell in range(n):
            pos = ell + 1
            if ell == j:
                dists[ell][point(n + 2)] = Fraction(1, C)
            elif ell == i:
                lo, hi = half - dev, half + dev
                if lo < 0 or hi < 0:
                    raise SectionMassNegative(
                        f"section {(i, j)}: |q - 1/2| = {abs(q_pair[(i, j)] - Fraction(1, 2))} is too large"
                    )
                dists[ell][point(n + 1)] = lo
                dists[ell][point(n + 3)] = hi
            else:
                dists[ell][point(pos)] = half
                dists[ell][point(2 * n + 4 - pos)] = half
    return tuple({x: w for x, w in sorted(d.items()) if w != 0} for d in dists)


def _assemble_q(
    v: Sequence[int],
    gamma: Sequence[Fraction],
    t: Sequence[Fraction],
    m: int,
    sections: Sequence[Mapping[int, Fraction]],
) -> ValueDistribution:
    masses: dict[int, Fraction] = {}
    for i in range(len(v)):
        at_v = gamma[i] / m + t[i]
        if at_v < 0:
            raise NegativeMass(f"mass at v_{i + 1} is negative: {at_v}")
        masses[v[i]] = at_v
        scale = gamma[i] * (m - 1) / m
        for j, w in sections[i].items():
            masses[v[i] + j] = masses.get(v[i] + j, Fraction(0)) + w * scale
    rest = 1 - sum(gamma[i] + t[i] for i in range(len(v)))
    if rest < 0:
        raise RemainderNegative(f"mass left for 0 is negative: {rest}")
    masses[0] = masses.get(0, Fraction(0)) + rest
    points = sorted(x for x, w in masses.items() if w != 0)
    return ValueDistribution(tuple(points), tuple(masses[x] for x in points))


def knapsack_to_iid(k: KnapsackInstance, N_override: Optional[int] = None) -> IIDConstruction:
    """Build ``Q`` and the decision threshold for a Knapsack instance.

    ``m = max(n^5, a_n)``; ``N = m^(n^2)`` unless overridden, in which case
    ``N >= 2 n^3 m^(4n)`` is required.
    """
    n = k.n
    a, L = k.a, k.L
    m = max(n**5, a[-1])
    if N_override is None:
        N = m ** (n * n)
    else:
        N = int(N_override)
        floor = 2 * n**3 * m ** (4 * n)
        if N < floor:
            raise ValueError(f"N_override must be at least 2 n^3 m^(4n) = {floor}")
    unit = N * N * m ** (3 * n)
    v = tuple(m ** (n + i) for i in range(1, n + 1))
    gamma = tuple(
        Fraction(m - 1, N * m ** (n + i + 1)) if i < n else Fraction(1, N * m ** (2 * n))
        for i in range(1, n + 1)
    )
    Gamma = tuple(Fraction(1, N * m ** (n + i)) for i in range(1, n + 1))

    # T_i = (1/v_i)((n-1)(Gamma_i + T_i)/(2N) - (n a_i^2 - 2 a_i L)/unit), linear in T_i
    T = []
    for i in range(n):
        rhs = (Fraction((n - 1)) * Gamma[i] / (2 * N) - Fraction(n * a[i] ** 2 - 2 * a[i] * L, unit)) / v[i]
        coef = 1 - Fraction(n - 1, 2 * N * v[i])
        T.append(rhs / coef)
    T = tuple(T)
    t = tuple(T[i] - (T[i + 1] if i + 1 < n else 0) for i in range(n))
    r = tuple(Gamma[i] + T[i] for i in range(n))
    block = tuple(gamma[i] + t[i] for i in range(n))  # mass of block i, i.e. Pr[value in v_i .. v_i + 2n^3]

    p_pair: dict[Pair, Fraction] = {}
    q_pair: dict[Pair, Fraction] = {}
    for i, j in _pair_list(n):
        p = Fraction(1, 2) - Fraction((a[i] - a[j]) ** 2) / (N * m ** (3 * n) * (Gamma[i] - Gamma[j]))
        if not 0 <= p <= 1:
            raise PairProbOutOfRange(f"p({i}, {j}) = {p} is not a probability")
        p_pair[(i, j)] = p
        # alpha in a later block than beta's (beta beyond block j), or beta exactly v_j
        later = sum(
            (block[kk] * block[ll] for kk in range(n) for ll in range(j + 1, n) if kk >= ll),
            Fraction(0),
        )
        beta_in_j = sum((block[kk] for kk in range(i + 1, n)), Fraction(0)) * block[j]
        beta_at_vj = (gamma[j] / m + t[j]) * (m - 1) * gamma[i] / m
        coef = (m - 1) ** 2 * gamma[i] * gamma[j] / (m * m)
        q = (p * r[i] * r[j] - later - beta_in_j - beta_at_vj) / coef
        if not 0 <= q <= 1:
            raise PairProbOutOfRange(f"q({i}, {j}) = {q} is not a probability; raise m or N")
        q_pair[(i, j)] = q

    sections = build_section_distributions(n, q_pair)
    Q = _assemble_q(v, gamma, t, m, sections)
    threshold = Fraction(n, N) + Fraction(L * L, unit) - Fraction(1, 2 * unit)
    return IIDConstruction(
        knapsack=k, m=m, N=N, v=v, gamma=gamma, Gamma=Gamma, T=T, t=t, r=r,
        p_pair=p_pair, q_pair=q_pair, sections=sections, Q=Q, threshold=threshold,
        scale_unit=unit,
    )


def with_q_pair(cons: IIDConstruction, q_pair: Mapping[Pair, Fraction]) -> IIDConstruction:
    """Rebuild the section distributions and ``Q`` from a different ``q_pair`` (fault injection)."""
    sections = build_section_distributions(cons.n, q_pair)
    Q = _assemble_q(cons.v, cons.gamma, cons.t, cons.m, sections)
    return replace(cons, sections=sections, Q=Q)


def iid_approx_revenue(cons: IIDConstruction, x: Sequence[int]) -> Fraction:
    """Quadratic approximation of the revenue when ``x_i`` items are priced at ``v_i``."""
    if len(x) != cons.n or any(xi < 0 for xi in x) or sum(x) != cons.n:
        raise MultiplicityMismatch(f"x must be {cons.n} nonnegative integers summing to {cons.n}")
    k = cons.knapsack
    dev = sum(xi * ai for xi, ai in zip(x, k.a)) - k.L
    return Fraction(cons.n, cons.N) + Fraction(k.L * k.L - dev * dev, cons.scale_unit)


def multiplicities(cons: IIDConstruction, prices: Sequence) -> tuple[int, ...]:
    """``x_i`` = number of items priced at ``v_i``; prices must lie in ``{v_1..v_n}``."""
    index = {vi: i for i, vi in enumerate(cons.v)}
    x = [0] * cons.n
    for p in prices:
        if p not in index:
            raise ValueError(f"price {p} is not one of the v_i")
        x[index[p]] += 1
    return tuple(x)


@dataclass(frozen=True)
class IIDVerification:
    q_sums_to_one: bool
    v_gamma_identity: bool
    temp_residual_zero: bool
    realized_p_matches: bool
    realized_q_matches: bool
    details: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(
            (
                self.q_sums_to_one,
                self.v_gamma_identity,
                self.temp_residual_zero,
                self.realized_p_matches,
                self.realized_q_matches,
            )
        )

    def as_dict(self) -> dict[str, bool]:
        return {
            "q_sums_to_one": self.q_sums_to_one,
            "v_gamma_identity": self.v_gamma_identity,
            "temp_residual_zero": self.temp_residual_zero,
            "realized_p_matches": self.realized_p_matches,
            "realized_q_matches": self.realized_q_matches,
        }


def _tail(Q: ValueDistribution, x) -> list[tuple[int, Fraction]]:
    return [(val, w) for val, w in zip(Q.values, Q.probs) if val >= x]


def realized_pair_probability(Q: ValueDistribution, vi: int, vj: int) -> Fraction:
    """``Pr[alpha - vi > beta - vj | alpha >= vi, beta >= vj]`` by double enumeration over ``Q``."""
    A, B = _tail(Q, vi), _tail(Q, vj)
    ra = sum((w for _, w in A), Fraction(0))
    rb = sum((w for _, w in B), Fraction(0))
    hit = sum((wa * wb for x, wa in A for y, wb in B if x - vi > y - vj), Fraction(0))
    return hit / (ra * rb)


def realized_section_probability(qi: Mapping[int, Fraction], qj: Mapping[int, Fraction]) -> Fraction:
    return sum((wa * wb for x, wa in qi.items() for y, wb in qj.items() if x > y), Fraction(0))


def verify_iid_construction(cons: IIDConstruction) -> IIDVerification:
    """Exact checks of the construction identities; failures are reported, not raised.

    Tail masses ``r_i`` and the ``T_i`` plugged into the linear identity are
    re-derived from ``Q`` itself, and the pairwise probabilities come from
    brute-force enumeration, so nothing is read back from the stored fields
    except the targets.
    """
    n, N, m = cons.n, cons.N, cons.m
    k = cons.knapsack
    details: dict = {}

    total = sum(cons.Q.probs, Fraction(0))
    q_ok = total == 1
    details["q_total"] = total

    Gamma = [sum(cons.gamma[i:], Fraction(0)) for i in range(n)]
    vg_ok = all(cons.v[i] * Gamma[i] == Fraction(1, N) for i in range(n))

    unit = N * N * m ** (3 * n)
    residuals = []
    for i in range(n):
        r_i = sum((w for _, w in _tail(cons.Q, cons.v[i])), Fraction(0))
        T_i = r_i - Gamma[i]
        rhs = (Fraction(n - 1) * r_i / (2 * N) - Fraction(n * k.a[i] ** 2 - 2 * k.a[i] * k.L, unit)) / cons.v[i]
        residuals.append(T_i - rhs)
    temp_ok = all(x == 0 for x in residuals)
    details["temp_residuals"] = residuals

    p_ok = True
    q_ok_pairs = True
    mismatches = []
    for i, j in _pair_list(n):
        target = Fraction(1, 2) - Fraction((k.a[i] - k.a[j]) ** 2) / (
            N * m ** (3 * n) * (Gamma[i] - Gamma[j])
        )
        realized = realized_pair_probability(cons.Q, cons.v[i], cons.v[j])
        if realized != target:
            p_ok = False
            mismatches.append(("p", (i, j), realized - target))
        qq = realized_section_probability(cons.sections[i], cons.sections[j])
        if qq != cons.q_pair[(i, j)]:
            q_ok_pairs = False
            mismatches.append(("q", (i, j), qq - cons.q_pair[(i, j)]))
    details["mismatches"] = mismatches
    return IIDVerification(q_ok, vg_ok, temp_ok, p_ok, q_ok_pairs, details)
