#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import from_fixture, list_fixtures, register_fixture
from orthokit.logic.core import ValidationError
from orthokit.logic.core.plugins import plugin_name
from orthokit.logic.fixtures import build, fixture_document
from orthokit.logic.lattice import FiniteOrtholattice


def test_plugin_name():
    assert plugin_name("lattices/two-element.yaml") == "lattices-two-element"
    assert plugin_name("frames/grid_cut.py") == "frames-grid-cut"


@pytest.mark.parametrize(
    "name",
    [
        "lattices-o6",
        "lattices-epistemic-10",
        "frames-scale",
        "frames-grid",
        "frames-grid-cut",
        "measures-epistemic-10",
        "derivations-persistence",
    ],
)
def test_list_fixtures(name):
    assert name in list_fixtures()


def test_fixture_document_is_raw():
    doc = fixture_document("lattices-two-element")
    assert doc["kind"] == "lattice"
    assert doc["elements"] == ["0", "1"]


def test_from_fixture_builds():
    L = from_fixture("lattices-two-element")
    assert isinstance(L, FiniteOrtholattice)
    assert len(L) == 2


def test_from_fixture_did_you_mean():
    with pytest.raises(NameError, match="did you mean 'lattices-o6'"):
        from_fixture("lattices-o7")


def test_from_fixture_unknown():
    with pytest.raises(NameError, match="values are"):
        from_fixture("zz")


def test_register_fixture():
    register_fixture(
        "test-three-chain",
        lambda: dict(
            kind="lattice",
            elements=["0", "a", "1"],
            leq=[["0", "a"], ["a", "1"]],
            neg={"0": "1", "a": "a", "1": "0"},
        ),
    )
    with pytest.raises(ValidationError):
        # a is its own complement, so a & ~a != 0
        from_fixture("test-three-chain")

    register_fixture("test-two", lambda: from_fixture("lattices-two-element"))
    assert len(from_fixture("test-two")) == 2
    assert "test-two" in list_fixtures()


def test_build_unknown_kind():
    with pytest.raises(ValidationError, match="Unknown document kind"):
        build(dict(kind="spreadsheet"))


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
