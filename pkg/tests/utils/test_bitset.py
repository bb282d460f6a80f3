#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic.utils import bitset


def test_bitset_basics():
    m = bitset.from_indices([0, 2, 5])
    assert m == 0b100101
    assert bitset.to_list(m) == [0, 2, 5]
    assert bitset.count(m) == 3
    assert bitset.contains(m, 2)
    assert not bitset.contains(m, 1)
    assert bitset.lowest(m) == 0
    assert bitset.lowest(0) == -1
    assert bitset.full(4) == 0b1111


def test_bitset_singleton_negative():
    with pytest.raises(ValueError):
        bitset.singleton(-1)


def test_bitset_subset_operations():
    a = bitset.from_indices([1, 3])
    b = bitset.from_indices([1, 2, 3])
    assert bitset.is_subset(a, b)
    assert not bitset.is_subset(b, a)
    assert bitset.union_all([a, b, 1]) == 0b1111
    assert bitset.intersection_all([a, b], 4) == a
    assert bitset.intersection_all([], 3) == 0b111


def test_bitset_subsets_in_order():
    assert list(bitset.subsets(0b101)) == [0, 0b001, 0b100, 0b101]
    assert list(bitset.subsets(0)) == [0]
    assert len(list(bitset.subsets(bitset.full(5)))) == 32


def test_bitset_names():
    names = ["x1", "x2", "x3"]
    assert bitset.to_names(0b110, names) == ["x2", "x3"]


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
