# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Sets of possibilities stored as Python integers.

Bit ``k`` of a mask is set when possibility ``k`` belongs to the set.
Python integers are unbounded, so the same helpers serve the one-point
frame and the 25-point grid.
"""

from typing import Iterable, Iterator


def full(n: int) -> int:
    return (1 << n) - 1


def singleton(k: int) -> int:
    if k < 0:
        raise ValueError(f"bit not greater than or equal to 0, bit == {k}")
    return 1 << k


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for k in indices:
        mask |= singleton(k)
    return mask


def indices(mask: int) -> Iterator[int]:
    """Iterate over the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int):
    return list(indices(mask))


def count(mask: int) -> int:
    return bin(mask).count("1")


def contains(mask: int, k: int) -> bool:
    return (mask >> k) & 1 == 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def lowest(mask: int) -> int:
    """Index of the lowest set bit, -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def union_all(masks: Iterable[int]) -> int:
    result = 0
    for m in masks:
        result |= m
    return result


def intersection_all(masks: Iterable[int], n: int) -> int:
    result = full(n)
    for m in masks:
        result &= m
    return result


def subsets(mask: int) -> Iterator[int]:
    """All sub-masks of ``mask``, the empty set first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def to_names(mask: int, names) -> list:
    return [names[k] for k in indices(mask)]
