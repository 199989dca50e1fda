"""Brute-force vector partition counting, used as ground truth in tests.

Dynamic programming over one direction vector at a time, on the box of
lattice points below the target coordinatewise.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence


def count_partitions_box(delta: Iterable[Sequence], bound: Sequence) -> dict:
    """Counts for every γ with 0 <= γ_i <= bound_i, as a dict point -> count."""
    bound = tuple(int(b) for b in bound)
    points = list(product(*(range(b + 1) for b in bound)))
    table = {p: 0 for p in points}
    table[tuple(0 for _ in bound)] = 1
    for alpha in delta:
        alpha = tuple(int(a) for a in alpha)
        # iterate in increasing order so multiples of alpha accumulate
        for p in points:
            prev = tuple(x - a for x, a in zip(p, alpha))
            if all(c >= 0 for c in prev):
                table[p] += table[prev]
    return table


def count_partitions(delta: Iterable[Sequence], gamma: Sequence) -> int:
    """Number of ways to write gamma as a non-negative integer combination
    of the vectors in delta."""
    gamma = tuple(int(g) for g in gamma)
    if any(g < 0 for g in gamma):
        return 0
    return count_partitions_box(list(delta), gamma)[gamma]
