"""Coninvolutions (A * conj(A) = I) in upper-triangular matrix groups over
Gaussian and quaternion integers mod p: exact counts, enumeration, sampling,
and oracle cross-checks."""

from ._core import (
    brute_count,
    count,
    count_composition,
    enumerate,
    find_ab,
    norm_one_count,
    sample,
    sl2_order,
    solver_count,
    table_csv,
    unit_group_order,
    verify_json,
)

__all__ = [
    "brute_count",
    "count",
    "count_composition",
    "enumerate",
    "find_ab",
    "norm_one_count",
    "sample",
    "sl2_order",
    "solver_count",
    "table_csv",
    "unit_group_order",
    "verify_json",
]

__version__ = "0.1.0"
