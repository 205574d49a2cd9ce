"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`PricingError`,
so callers (the CLI in particular) can separate bad input from genuine bugs.
"""

from __future__ import annotations


class PricingError(Exception):
    """Base class for all package errors."""


class ValidationError(PricingError, ValueError):
    """An instance record violates a structural invariant."""


class EmptyInstance(ValidationError):
    pass


class NonAscendingSupport(ValidationError):
    pass


class ProbSumNotOne(ValidationError):
    pass


class NonPositiveProb(ValidationError):
    pass


class NegativeValue(ValidationError):
    pass


class DimensionMismatch(PricingError, ValueError):
    pass


class ValueNotInSupport(PricingError, ValueError):
    pass


class EnumerationTooLarge(PricingError):
    pass


class GridTooLarge(PricingError):
    pass


class NonIntegerValues(PricingError, ValueError):
    pass


class DegenerateInstance(PricingError, ValueError):
    pass


class SupportTooLarge(PricingError, ValueError):
    pass


class LimitMismatch(PricingError, AssertionError):
    """The constant part of the best perturbed candidate does not attain the limit revenue."""


class UnboundedCell(PricingError, ValueError):
    """Some price in a cell has no upper bound, so no finite optimum exists."""


class OddSum(PricingError, ValueError):
    pass


class InvalidProbabilities(PricingError, ValueError):
    pass


class InvalidKnapsack(PricingError, ValueError):
    pass


class NegativeMass(PricingError, ValueError):
    pass


class SectionMassNegative(NegativeMass):
    pass


class RemainderNegative(NegativeMass):
    pass


class PairProbOutOfRange(PricingError, ValueError):
    pass


class MultiplicityMismatch(PricingError, ValueError):
    pass


class ParseError(PricingError, ValueError):
    pass
