#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

from fractions import Fraction

import pytest

from orthokit.logic.utils import humanize


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(9, 10), "9/10"),
        (Fraction(2, 2), "1"),
        (0, "0"),
        ("3/6", "1/2"),
    ],
)
def test_humanize_fraction(value, expected):
    assert humanize.fraction(value) == expected


@pytest.mark.parametrize(
    "value,expected",
    [
        (0.25, "250 milliseconds"),
        (1, "1 second"),
        (2.5, "2.5 seconds"),
        (61, "1 minute 1 second"),
        (150, "2 minutes 30 seconds"),
    ],
)
def test_humanize_seconds(value, expected):
    assert humanize.seconds(value) == expected


def test_humanize_did_you_mean():
    vocabulary = ["lattices-o6", "lattices-mo2", "frames-scale"]
    assert humanize.did_you_mean("lattices-o7", vocabulary) == "lattices-o6"
    assert humanize.did_you_mean("frames-scal", vocabulary) == "frames-scale"
    assert humanize.did_you_mean("zzzzzzzzzzzzzzzzzzzz", vocabulary) is None
    assert humanize.did_you_mean("x", []) is None


def test_humanize_lists():
    assert humanize.list_to_human(["a", "b", "c"]) == "a, b and c"
    assert humanize.set_to_human(["x1", "x2"]) == "{x1,x2}"
    assert humanize.plural(2, "frame") == "2 frames"
    assert humanize.as_count("5M") == 5_000_000


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
