#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic.core.thread import ordered_map


def _first_even(part):
    for x in part:
        if x % 2 == 0:
            return x
    return None


@pytest.mark.parametrize("nthreads", [1, 3])
def test_ordered_map_keeps_order(nthreads):
    parts = [[1, 3], [5, 6], [7], [8, 10]]
    results = ordered_map(_first_even, parts, nthreads)
    assert len(results) == 4
    assert results[:3] == [None, 6, None]
    assert next(r for r in results if r is not None) == 6


def test_ordered_map_inline_skips_after_hit():
    seen = []

    def search(part):
        seen.append(part)
        return _first_even(part)

    assert ordered_map(search, [[2], [4], [6]], 1) == [2, None, None]
    assert seen == [[2]]


@pytest.mark.parametrize("nthreads", [1, 2])
def test_ordered_map_raises(nthreads):
    def fail(part):
        raise ValueError(part)

    with pytest.raises(ValueError):
        ordered_map(fail, [[1], [2]], nthreads)


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
