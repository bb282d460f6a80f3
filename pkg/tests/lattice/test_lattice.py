#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import from_fixture, parse
from orthokit.logic.core import StructureError, ValidationError, Witness
from orthokit.logic.formula import BOT
from orthokit.logic.frame import frame_from_lattice, proposition_lattice
from orthokit.logic.lattice import (
    FiniteOrtholattice,
    LatticeProperty,
    check_diamond_laws,
    check_lattice,
    check_property,
    entails_alg,
    entails_on_lattice,
    eval_alg,
    generated_subortholattice,
    iso_check,
    join_irreducibles,
    lattice_to_dot,
    two_element_lattice,
)
from orthokit.logic.search import enumerate_lattices


@pytest.fixture
def epistemic10():
    return from_fixture("lattices-epistemic-10")


@pytest.mark.parametrize("name", ["lattices-two-element", "lattices-o6", "lattices-mo2", "lattices-epistemic-10"])
def test_fixtures_are_ortholattices(name):
    L = from_fixture(name)
    assert check_lattice(L) is None


def test_two_element():
    L = two_element_lattice()
    assert iso_check(L, from_fixture("lattices-two-element")) is not None
    for p in ("Distributive", "Orthomodular", "Pseudocomplement", "S5", "Epistemic", "BooleanBlockOK"):
        assert check_property(L, p) is None, p


@pytest.mark.parametrize(
    "name,prop,expected",
    [
        ("lattices-o6", "Orthomodular", ("a", "b")),
        ("lattices-mo2", "Orthomodular", None),
        ("lattices-epistemic-10", "Orthomodular", ("p", "<>p")),
        ("lattices-epistemic-10", "Pseudocomplement", ("p", "<>~p")),
        ("lattices-epistemic-10", "Epistemic", None),
        ("lattices-epistemic-10", "BooleanBlockOK", None),
    ],
)
def test_check_property(name, prop, expected):
    w = check_property(from_fixture(name), prop)
    if expected is None:
        assert w is None
    else:
        assert isinstance(w, Witness)
        assert w.values == expected


def test_non_distributive():
    for name in ("lattices-o6", "lattices-mo2", "lattices-epistemic-10"):
        assert check_property(from_fixture(name), LatticeProperty.DISTRIBUTIVE) is not None


def test_check_property_needs_box():
    with pytest.raises(StructureError):
        check_property(from_fixture("lattices-o6"), "T")


def test_check_property_unknown():
    with pytest.raises(NameError, match="did you mean 'Orthomodular'"):
        check_property(from_fixture("lattices-o6"), "Orthomodullar")


def test_diamond_laws(epistemic10):
    assert check_diamond_laws(epistemic10) is None


def test_eval_alg(epistemic10):
    a = eval_alg(epistemic10, {"p": "p"}, parse("<>p & <>~p"))
    assert epistemic10.label(a) == "<>p & <>~p"
    assert epistemic10.label(eval_alg(epistemic10, {"p": "p"}, parse("~(<>p & <>~p)"))) == "[]p \\/ []~p"


def test_eval_alg_unassigned(epistemic10):
    with pytest.raises(ValidationError, match="does not assign"):
        eval_alg(epistemic10, {}, parse("p"))


def test_entails_alg(epistemic10):
    v = {"p": "p"}
    assert entails_alg(epistemic10, v, parse("p"), parse("<>p"))
    assert not entails_alg(epistemic10, v, parse("<>~p"), parse("~p"))
    f = parse("<>p & <>~p")
    assert entails_alg(epistemic10, v, f, f)


def test_entails_on_lattice(epistemic10):
    assert entails_on_lattice(epistemic10, parse("~p & <>p"), BOT) is None
    assert entails_on_lattice(epistemic10, parse("[]p"), parse("p")) is None
    assert entails_on_lattice(epistemic10, parse("<>p"), parse("p")) is not None

    distributivity = parse("p & (q \\/ r)"), parse("(p & q) \\/ (p & r)")
    assert entails_on_lattice(two_element_lattice(), *distributivity) is None
    v = entails_on_lattice(from_fixture("lattices-o6"), *distributivity)
    assert set(v) == {"p", "q", "r"}


def test_entails_on_lattice_bool_block(epistemic10):
    # Boolean atoms range over the block, where distributivity holds
    f, g = parse("a & (b \\/ c)", ["a", "b", "c"]), parse("(a & b) \\/ (a & c)", ["a", "b", "c"])
    assert entails_on_lattice(epistemic10, f, g) is None


def test_join_irreducibles(epistemic10):
    assert sorted(epistemic10.label(a) for a in join_irreducibles(epistemic10)) == sorted(
        ["p", "~p", "[]p", "[]~p", "<>p & <>~p"]
    )


def test_generated_subortholattice(epistemic10):
    sub = generated_subortholattice(epistemic10, ["p"])
    assert sorted(sub.names) == sorted(["0", "p", "~p", "1"])
    assert sub.box is None
    assert len(sub.bool_block) == 4
    assert check_lattice(sub) is None


def test_iso_check(epistemic10):
    chain = from_fixture("frames-chain-5")
    L = proposition_lattice(chain)
    assert len(L) == 10
    assert iso_check(epistemic10, L, ortho_only=True) is not None
    # the box and the Boolean block have no counterpart
    assert iso_check(epistemic10, L) is None
    assert iso_check(from_fixture("lattices-o6"), from_fixture("lattices-mo2")) is None


@pytest.mark.parametrize("name", ["lattices-o6", "lattices-mo2", "lattices-epistemic-10"])
def test_representation(name):
    L = from_fixture(name)
    F = frame_from_lattice(L)
    assert iso_check(L, proposition_lattice(F), ortho_only=True) is not None


def test_document(epistemic10):
    doc = epistemic10.to_document()
    assert doc["kind"] == "lattice"
    L = FiniteOrtholattice.from_document(doc)
    assert L.names == epistemic10.names
    assert iso_check(L, epistemic10) == {a: a for a in epistemic10.elements()}


def test_malformed_document():
    with pytest.raises(ValidationError, match="Malformed"):
        FiniteOrtholattice.from_document(dict(kind="lattice", elements=["0", "1"], leq=[["0", "1"]]))
    with pytest.raises(ValidationError, match="antisymmetric"):
        FiniteOrtholattice(["0", "a", "1"], [(0, 1), (1, 0), (1, 2)], [2, 1, 0])


def test_lattice_to_dot(epistemic10):
    dot = lattice_to_dot(epistemic10, highlight=["<>p & <>~p"])
    assert dot.startswith("digraph lattice {")
    assert 'highlight="true"' in dot
    assert dot.count("arrowhead=none") == len(epistemic10.covers())


def _pseudocomplemented_iff_distributive(L):
    pseudo = check_property(L, "Pseudocomplement") is None
    distributive = check_property(L, "Distributive") is None
    assert pseudo == distributive, L.names


@pytest.mark.parametrize("name", ["lattices-two-element", "lattices-o6", "lattices-mo2", "lattices-epistemic-10"])
def test_pseudocomplement_iff_distributive(name):
    _pseudocomplemented_iff_distributive(from_fixture(name))


@pytest.mark.parametrize(
    "n",
    [
        2,
        4,
        6,
        pytest.param(8, marks=[pytest.mark.long_test, pytest.mark.search]),
    ],
)
def test_pseudocomplement_iff_distributive_on_small_lattices(n):
    found = list(enumerate_lattices("ortholattice", n))
    assert found
    for L in found:
        _pseudocomplemented_iff_distributive(L)


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
