"""Exact domain types: rationals, first-order epsilon numbers, value distributions."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Any, Iterable, Mapping, Sequence, Union

from .errors import (
    DimensionMismatch,
    EmptyInstance,
    NegativeValue,
    NonAscendingSupport,
    NonPositiveProb,
    ProbSumNotOne,
    ValidationError,
)

Rational = Fraction


def to_rational(x: Any) -> Fraction:
    """Convert ``x`` to a :class:`Fraction` without ever going through floats.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational string: {x!r}") from exc
    raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")


@functools.total_ordering
class EpsAffine:
    """The number ``c0 + c1*eps`` for a formal infinitesimal ``eps > 0``.

    Ordering is lexicographic on ``(c0, c1)``.  Plain ints and Fractions mix in
    freely as numbers with a zero epsilon coefficient.  The product of two
    EpsAffine values drops the ``eps**2`` term.
    """

    __slots__ = ("c0", "c1")

    def __init__(self, c0: Any = 0, c1: Any = 0) -> None:
        object.__setattr__(self, "c0", to_rational(c0))
        object.__setattr__(self, "c1", to_rational(c1))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("EpsAffine is immutable")

    @classmethod
    def lift(cls, x: Any) -> "EpsAffine":
        if isinstance(x, EpsAffine):
            return x
        return cls(to_rational(x), 0)

    @property
    def limit(self) -> Fraction:
        """Value at ``eps = 0``."""
        return self.c0

    def __repr__(self) -> str:
        return f"EpsAffine({self.c0}, {self.c1})"

    def __str__(self) -> str:
        if self.c1 == 0:
            return str(self.c0)
        sign = "+" if self.c1 > 0 else "-"
        return f"{self.c0}{sign}{abs(self.c1)}e"

    def _key(self) -> tuple[Fraction, Fraction]:
        return (self.c0, self.c1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EpsAffine):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.c1 == 0 and self.c0 == other
        return NotImplemented

    def __lt__(self, other: Any) -> bool:
        try:
            o = EpsAffine.lift(other)
        except TypeError:
            return NotImplemented
        return self._key() < o._key()

    def __hash__(self) -> int:
        if self.c1 == 0:
            return hash(self.c0)
        return hash((self.c0, self.c1))

    def __add__(self, other: Any) -> "EpsAffine":
        try:
            o = EpsAffine.lift(other)
        except TypeError:
            return NotImplemented
        return EpsAffine(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self) -> "EpsAffine":
        return EpsAffine(-self.c0, -self.c1)

    def __sub__(self, other: Any) -> "EpsAffine":
        try:
            o = EpsAffine.lift(other)
        except TypeError:
            return NotImplemented
        return EpsAffine(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other: Any) -> "EpsAffine":
        try:
            o = EpsAffine.lift(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "EpsAffine":
        if isinstance(other, EpsAffine):
            return EpsAffine(self.c0 * other.c0, self.c0 * other.c1 + self.c1 * other.c0)
        try:
            k = to_rational(other)
        except TypeError:
            return NotImplemented
        return EpsAffine(self.c0 * k, self.c1 * k)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "EpsAffine":
        if isinstance(other, EpsAffine):
            raise TypeError("division by an EpsAffine is not supported")
        try:
            k = to_rational(other)
        except TypeError:
            return NotImplemented
        return EpsAffine(self.c0 / k, self.c1 / k)


Number = Union[Fraction, EpsAffine]


def limit(x: Any) -> Fraction:
    """Constant term of an EpsAffine, or the rational itself."""
    if isinstance(x, EpsAffine):
        return x.c0
    return to_rational(x)


@dataclass(frozen=True)
class ValueDistribution:
    """Finite distribution of one item's value: ascending support with positive masses."""

    values: tuple
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(v if isinstance(v, EpsAffine) else to_rational(v) for v in self.values)
        probs = tuple(to_rational(q) for q in self.probs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if len(values) != len(probs):
            raise ValidationError(
                f"support has {len(values)} values but {len(probs)} probabilities"
            )
        if not values:
            raise EmptyInstance("a value distribution needs at least one support point")
        for v in values:
            if v < 0:
                raise NegativeValue(f"negative support value {v}")
        for lo, hi in zip(values, values[1:]):
            if not lo < hi:
                raise NonAscendingSupport(f"support not strictly ascending at {lo}, {hi}")
        for q in probs:
            if q <= 0:
                raise NonPositiveProb(f"probability {q} is not positive")
        total = sum(probs, Fraction(0))
        if total != 1:
            raise ProbSumNotOne(f"probabilities sum to {total}, not 1")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def low(self):
        return self.values[0]

    @property
    def high(self):
        return self.values[-1]

    def prob_of(self, value) -> Fraction:
        for v, q in zip(self.values, self.probs):
            if v == value:
                return q
        return Fraction(0)

    @classmethod
    def point(cls, value) -> "ValueDistribution":
        return cls((value,), (Fraction(1),))


@dataclass(frozen=True)
class PricingInstance:
    """``n`` independent item value distributions."""

    items: tuple[ValueDistribution, ...]

    def __post_init__(self) -> None:
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        if not items:
            raise EmptyInstance("an instance needs at least one item")
        for it in items:
            if not isinstance(it, ValueDistribution):
                raise TypeError("items must be ValueDistribution objects")

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def lows(self) -> tuple:
        return tuple(it.low for it in self.items)

    @property
    def highs(self) -> tuple:
        return tuple(it.high for it in self.items)

    @property
    def max_support(self) -> int:
        return max(len(it) for it in self.items)

    def is_integral(self) -> bool:
        return all(
            isinstance(v, Fraction) and v.denominator == 1 for it in self.items for v in it.values
        )

    @classmethod
    def from_pairs(cls, spec: Iterable[Iterable[tuple[Any, Any]]]) -> "PricingInstance":
        """Build from ``[[(value, prob), ...], ...]``; convenient in tests."""
        items = []
        for pairs in spec:
            pairs = list(pairs)
            items.append(ValueDistribution(tuple(v for v, _ in pairs), tuple(q for _, q in pairs)))
        return cls(tuple(items))


def price_vector(prices: Sequence[Any], n: int | None = None) -> tuple:
    """Normalise a price sequence to a tuple of Fractions / EpsAffine, checking length and sign."""
    out = tuple(p if isinstance(p, EpsAffine) else to_rational(p) for p in prices)
    if n is not None and len(out) != n:
        raise DimensionMismatch(f"expected {n} prices, got {len(out)}")
    for p in out:
        if p < 0:
            raise ValidationError(f"negative price {p}")
    return out


def validate_instance(raw: Mapping[str, Any] | Sequence[Any]) -> PricingInstance:
    """Validate a parsed instance record ``{"items": [{"values": [...], "probs": [...]}, ...]}``.

    Values and probabilities may be ints, Fractions or rational strings.
    Raises a :class:`~itempricing.errors.ValidationError` subclass naming the
    violated invariant.
    """
    if isinstance(raw, Mapping):
        if "items" not in raw:
            raise ValidationError("instance record lacks an 'items' field")
        records = raw["items"]
    else:
        records = raw
    if not isinstance(records, Sequence) or isinstance(records, (str, bytes)):
        raise ValidationError("'items' must be a list")
    if len(records) == 0:
        raise EmptyInstance("an instance needs at least one item")
    items = []
    for k, rec in enumerate(records):
        if not isinstance(rec, Mapping) or "values" not in rec or "probs" not in rec:
            raise ValidationError(f"item {k} must have 'values' and 'probs'")
        try:
            values = tuple(to_rational(v) for v in rec["values"])
            probs = tuple(to_rational(q) for q in rec["probs"])
        except TypeError as exc:
            raise ValidationError(f"item {k}: {exc}") from exc
        items.append(ValueDistribution(values, probs))
    return PricingInstance(tuple(items))


def scale_to_integer(inst: PricingInstance) -> tuple[PricingInstance, Fraction]:
    """Multiply every support value by the lcm of their denominators.

    Returns the integer-valued instance and the factor; probabilities are untouched.
    """
    factor = 1
    for it in inst.items:
        for v in it.values:
            if isinstance(v, EpsAffine):
                raise TypeError("cannot scale an instance with symbolic values")
            factor = math.lcm(factor, v.denominator)
    if factor == 1:
        return inst, Fraction(1)
    items = tuple(
        ValueDistribution(tuple(v * factor for v in it.values), it.probs) for it in inst.items
    )
    return PricingInstance(items), Fraction(factor)
