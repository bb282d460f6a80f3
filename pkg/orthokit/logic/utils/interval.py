# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, float, Fraction]

CLOSED = ("both", "left", "right", "none")


def _exact(value):
    if value is None:
        return None
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Interval:
    """Numbers between ``left`` and ``right``; a ``None`` bound is unbounded.

    Bounds and members are compared as exact fractions, so ``0.1`` is
    ``1/10`` and probability ranges such as ``[0, 1]`` have no rounding.
    """

    left: Optional[Number]
    right: Optional[Number]
    closed: str = "both"

    def __post_init__(self):
        if self.closed not in CLOSED:
            raise ValueError(f"Invalid closed={self.closed!r}, expected one of {CLOSED}")
        if self.bounded_left and self.bounded_right and _exact(self.left) >= _exact(self.right):
            raise ValueError(f"Invalid bounds, left={self.left} >= right={self.right}")

    def __contains__(self, value):
        try:
            value = _exact(value)
        except (TypeError, ValueError):
            return False
        if value is None:
            return False
        if self.bounded_left:
            left = _exact(self.left)
            if value < left or (value == left and not self.closed_left):
                return False
        if self.bounded_right:
            right = _exact(self.right)
            if value > right or (value == right and not self.closed_right):
                return False
        return True

    @property
    def closed_left(self):
        return self.closed in ("both", "left")

    @property
    def closed_right(self):
        return self.closed in ("both", "right")

    @property
    def bounded_left(self):
        return self.left is not None

    @property
    def bounded_right(self):
        return self.right is not None

    @property
    def bounded(self):
        return self.bounded_left or self.bounded_right


UNIT = Interval(0, 1)
