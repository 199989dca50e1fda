"""Exact quasipolynomial formulas for vector partition functions."""

from .engine import (
    VpfResult,
    compute_elementary,
    compute_pf,
    evaluate_result,
    root_system,
    verify_against_oracle,
)
from .oracle import count_partitions

__all__ = [
    "VpfResult",
    "compute_pf",
    "compute_elementary",
    "evaluate_result",
    "root_system",
    "verify_against_oracle",
    "count_partitions",
]
