"""Exact and randomized solvers for k disjoint subset-sum questions."""

from ._core import (
    Error,
    __version__,
    decide,
    k_subset_sum_ratio,
    k_way_partition,
    multiple_subset_sum,
    realizable_tuples,
    subset_sum_ratio,
    validate_instance,
)

__all__ = [
    "Error",
    "__version__",
    "decide",
    "k_subset_sum_ratio",
    "k_way_partition",
    "multiple_subset_sum",
    "realizable_tuples",
    "subset_sum_ratio",
    "validate_instance",
]
