"""Instance generators for the two hardness reductions and their helpers."""

from .knapsack import (
    IIDConstruction,
    IIDVerification,
    KnapsackInstance,
    iid_approx_revenue,
    knapsack_decide,
    knapsack_to_iid,
    subset_sum_decide,
    subsetsum_to_knapsack,
    verify_iid_construction,
)
from .partition import (
    PartitionInstance,
    Support3Construction,
    partition_to_support3,
    quadratic_approx_support3,
    shift_positive,
)

__all__ = [
    "IIDConstruction",
    "IIDVerification",
    "KnapsackInstance",
    "PartitionInstance",
    "Support3Construction",
    "iid_approx_revenue",
    "knapsack_decide",
    "knapsack_to_iid",
    "partition_to_support3",
    "quadratic_approx_support3",
    "shift_positive",
    "subset_sum_decide",
    "subsetsum_to_knapsack",
    "verify_iid_construction",
]
