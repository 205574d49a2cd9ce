"""Cells of the price-space hyperplane arrangement and their constraint graphs.

A cell fixes, for every item ``i`` and support value ``s``, the side of
``p_i = s``, and for every pair ``i < j`` and values ``s, t`` the side of
``p_i - p_j = s - t``.  Buyer behaviour is constant on a cell, so each cell
has fixed win probabilities and its best price vector is the vector of
shortest-path distances from an anchor node 0 (price zero) in a graph of
difference constraints.  Strict constraints get weight ``w - eps``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch, UnboundedCell
from .model import EpsAffine, PricingInstance, price_vector, to_rational
from .revenue import expected_revenue, win_probabilities


class Relation(enum.Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    @classmethod
    def compare(cls, lhs, rhs) -> "Relation":
        if lhs < rhs:
            return cls.LT
        if lhs > rhs:
            return cls.GT
        return cls.EQ

    @classmethod
    def parse(cls, text: str) -> "Relation":
        aliases = {"==": "=", "LT": "<", "LE": "<=", "EQ": "=", "GE": ">=", "GT": ">"}
        return cls(aliases.get(text, text))


@dataclass(frozen=True)
class Constraint:
    """``p_i rel bound`` if ``j`` is None, else ``p_i - p_j rel bound``.  Indices are 0-based."""

    i: int
    j: Optional[int]
    rel: Relation
    bound: Fraction

    def holds(self, p: Sequence) -> bool:
        lhs = p[self.i] - (p[self.j] if self.j is not None else 0)
        return {
            Relation.LT: lhs < self.bound,
            Relation.LE: lhs <= self.bound,
            Relation.EQ: lhs == self.bound,
            Relation.GE: lhs >= self.bound,
            Relation.GT: lhs > self.bound,
        }[self.rel]


@dataclass(frozen=True)
class CellDescription:
    """Full sign vector of a price vector against every hyperplane.

    ``value_relations[i]`` lists ``(s, rel)`` meaning ``p_i rel s`` for each
    ``s`` in the support of item ``i``; ``diff_relations`` lists
    ``(i, j, s, t, rel)`` meaning ``p_i - p_j rel s - t`` for ``i < j``.
    """

    value_relations: tuple[tuple[tuple[Fraction, Relation], ...], ...]
    diff_relations: tuple[tuple[int, int, Fraction, Fraction, Relation], ...]

    @property
    def n(self) -> int:
        return len(self.value_relations)

    def constraints(self) -> list[Constraint]:
        out = []
        for i, rels in enumerate(self.value_relations):
            for s, rel in rels:
                out.append(Constraint(i, None, rel, s))
        for i, j, s, t, rel in self.diff_relations:
            out.append(Constraint(i, j, rel, s - t))
        return out


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: EpsAffine

    @property
    def strict(self) -> bool:
        return self.weight.c1 != 0


@dataclass(frozen=True)
class ConstraintGraph:
    """Digraph on nodes ``0..n``; node 0 is the zero-price anchor, node ``i+1`` is item ``i``."""

    n_nodes: int
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class CellOptimum:
    prices: tuple[Fraction, ...]
    revenue: Fraction
    gamma: tuple[Fraction, ...]


def cell_of(inst: PricingInstance, p: Sequence) -> CellDescription:
    """Sign vector of ``p`` against every hyperplane of ``inst``."""
    p = price_vector(p, inst.n)
    value_rel = tuple(
        tuple((s, Relation.compare(p[i], s)) for s in it.values)
        for i, it in enumerate(inst.items)
    )
    diff_rel = []
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            d = p[i] - p[j]
            for s in inst.items[i].values:
                for t in inst.items[j].values:
                    diff_rel.append((i, j, s, t, Relation.compare(d, s - t)))
    return CellDescription(value_rel, tuple(diff_rel))


def _edges_for(c: Constraint) -> list[tuple[int, int, EpsAffine]]:
    # a constraint x_v - x_u <= w becomes edge (u, v) with weight w; nodes shift by one
    u = 0 if c.j is None else c.j + 1
    v = c.i + 1
    b = to_rational(c.bound)
    upper = {Relation.LT: EpsAffine(b, -1), Relation.LE: EpsAffine(b, 0), Relation.EQ: EpsAffine(b, 0)}
    lower = {Relation.GT: EpsAffine(-b, -1), Relation.GE: EpsAffine(-b, 0), Relation.EQ: EpsAffine(-b, 0)}
    out = []
    if c.rel in upper:
        out.append((u, v, upper[c.rel]))
    if c.rel in lower:
        out.append((v, u, lower[c.rel]))
    return out


def build_constraint_graph(
    inst: Union[PricingInstance, int],
    cell: Union[CellDescription, Iterable[Constraint]],
) -> ConstraintGraph:
    """Difference-constraint graph of a cell, keeping the tightest edge per ordered node pair.

    ``cell`` may also be a plain list of :class:`Constraint`, which allows
    non-strict bounds (``<=``/``>=``) that a sign vector cannot express.
    """
    n = inst if isinstance(inst, int) else inst.n
    constraints = cell.constraints() if isinstance(cell, CellDescription) else list(cell)
    if isinstance(cell, CellDescription) and cell.n != n:
        raise DimensionMismatch(f"cell has {cell.n} items, instance has {n}")
    best: dict[tuple[int, int], EpsAffine] = {}
    for c in constraints:
        if not 0 <= c.i < n or (c.j is not None and not 0 <= c.j < n):
            raise DimensionMismatch(f"constraint {c} refers to an item outside 0..{n - 1}")
        for u, v, w in _edges_for(c):
            if (u, v) not in best or w < best[(u, v)]:
                best[(u, v)] = w
    edges = tuple(Edge(u, v, w) for (u, v), w in sorted(best.items()))
    return ConstraintGraph(n + 1, edges)


def _has_negative_cycle(g: ConstraintGraph, zero) -> bool:
    # all-zero start = virtual source joined to every node, so unreachable cycles count too
    dist = [zero] * g.n_nodes
    for _ in range(g.n_nodes):
        changed = False
        for e in g.edges:
            cand = dist[e.src] + e.weight
            if cand < dist[e.dst]:
                dist[e.dst] = cand
                changed = True
        if not changed:
            return False
    return True


def check_feasible(g: ConstraintGraph) -> bool:
    """True iff no cycle has weight below zero in the epsilon order.

    A zero-weight cycle through a strict edge has weight ``(0, -k)``, so the
    single lexicographic test also rules those out.
    """
    return not _has_negative_cycle(g, EpsAffine(0, 0))


def shortest_distances(g: ConstraintGraph, *, symbolic: bool = True) -> list:
    """Bellman-Ford distances from node 0; None marks unreachable nodes.

    With ``symbolic=False`` the epsilon parts of the weights are dropped.
    Assumes the graph is feasible.
    """
    if symbolic:
        edges = [(e.src, e.dst, e.weight) for e in g.edges]
        zero = EpsAffine(0, 0)
    else:
        edges = [(e.src, e.dst, e.weight.c0) for e in g.edges]
        zero = Fraction(0)
    dist: list = [None] * g.n_nodes
    dist[0] = zero
    for _ in range(g.n_nodes - 1):
        changed = False
        for u, v, w in edges:
            if dist[u] is None:
                continue
            cand = dist[u] + w
            if dist[v] is None or cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    return dist


def cell_optimum(
    inst: PricingInstance, cell: Union[CellDescription, Iterable[Constraint]]
) -> Optional[CellOptimum]:
    """Best price vector over the closure of a cell, or None if the cell is empty."""
    g = build_constraint_graph(inst, cell)
    if not check_feasible(g):
        return None
    dist = shortest_distances(g)
    if any(d is None for d in dist[1:]):
        missing = [k - 1 for k, d in enumerate(dist) if d is None]
        raise UnboundedCell(f"items {missing} have no upper bound in this cell")
    prices = tuple(d.c0 for d in dist[1:])
    plain = shortest_distances(g, symbolic=False)
    if tuple(plain[1:]) != prices:
        raise AssertionError("epsilon-free distances disagree with the symbolic limit")
    return CellOptimum(prices, expected_revenue(inst, prices), win_probabilities(inst, prices))


def verify_certificate(
    inst: PricingInstance, cell: Union[CellDescription, Iterable[Constraint]], threshold
) -> bool:
    """Yes-certificate check: the cell is non-empty and its optimum reaches ``threshold``."""
    opt = cell_optimum(inst, cell)
    return opt is not None and opt.revenue >= to_rational(threshold)
