#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import from_fixture
from orthokit.logic.core import StructureError, ValidationError
from orthokit.logic.frame import (
    CompatibilityFrame,
    FrameCondition,
    arrow_set,
    arrow_table,
    box_between,
    box_set,
    check_condition,
    check_families,
    diamond_between,
    diamond_set,
    down_set,
    is_epistemic,
    is_regular,
    join_set,
    neg_set,
    product,
    proposition_lattice,
    refines,
    refines_by_propositions,
    relational_to_functional,
    worlds,
)
from orthokit.logic.lattice import check_lattice, check_property, iso_check
from orthokit.logic.search import enumerate_frames
from orthokit.logic.testing import path_frame


@pytest.fixture
def scale():
    return from_fixture("frames-scale").frame


@pytest.fixture
def conditional():
    return from_fixture("frames-conditional").frame


def test_path_frame():
    F = path_frame(5)
    assert {frozenset(F.regular(A)) for A in F.regular_sets()} == {
        frozenset(),
        frozenset({"x1"}),
        frozenset({"x3"}),
        frozenset({"x5"}),
        frozenset({"x1", "x2"}),
        frozenset({"x4", "x5"}),
        frozenset({"x1", "x5"}),
        frozenset({"x1", "x2", "x3"}),
        frozenset({"x3", "x4", "x5"}),
        frozenset(F.names),
    }
    assert F.compatible("x1", "x2")
    assert not F.compatible("x1", "x3")
    assert F.compatible("x3", "x3")


@pytest.mark.parametrize(
    "frame,lattice",
    [
        ("frames-chain-4", "lattices-o6"),
        ("frames-cycle-4", "lattices-mo2"),
    ],
)
def test_proposition_lattice(frame, lattice):
    L = proposition_lattice(from_fixture(frame))
    assert iso_check(L, from_fixture(lattice)) is not None


def test_chain_4_not_orthomodular():
    L = proposition_lattice(from_fixture("frames-chain-4"))
    assert check_property(L, "Orthomodular") is not None
    assert check_property(proposition_lattice(from_fixture("frames-cycle-4")), "Orthomodular") is None


def test_regular_set_algebra(scale):
    p = {"x1", "x2"}
    assert is_regular(scale, p)
    assert not is_regular(scale, {"x1", "x3"})
    assert neg_set(scale, p) == {"x4", "x5"}
    assert box_set(scale, p) == {"x1"}
    assert box_set(scale, {"x4", "x5"}) == {"x5"}
    assert diamond_set(scale, p) == {"x1", "x2", "x3", "y"}
    assert diamond_set(scale, p) & diamond_set(scale, {"x4", "x5"}) == {"x3"}
    assert join_set(scale, box_set(scale, p), box_set(scale, {"x4", "x5"})) == {"x1", "x5"}


def test_box_between_on_chain():
    F = from_fixture("frames-chain-5")
    P = box_between(F, {"x1", "x2"})
    assert P == {"x1"}
    assert box_between(F, P) == set()
    assert box_between(F, F.full) == F.full

    # the existential companion leaves the regular sets
    D = diamond_between(F, {"x1", "x2", "x3"})
    assert D == {"x1", "x2", "x3", "x4"}
    assert not is_regular(F, D)


def test_refinement(scale):
    assert refines(scale, "x2", "y")
    assert not refines(scale, "y", "x2")
    assert refines_by_propositions(scale, "x2", "y")
    assert down_set(scale, "y") == {"x1", "x2", "x3", "y"}
    assert worlds(scale) == {"x1", "x5"}


def test_epistemic(scale):
    assert is_epistemic(scale)
    for c in ("IRegularity", "DTotal", "Factivity", "Knowability", "GroundingKey"):
        assert check_condition(scale, c) is None, c


def test_factivity_fails():
    F = path_frame(3, i={"x1": "x3", "x2": "x2", "x3": "x3"})
    w = check_condition(F, FrameCondition.FACTIVITY)
    assert w.values == ("x1",)
    assert not is_epistemic(F)


def test_dtotal_fails():
    F = path_frame(3, i={"x1": "x1"})
    assert check_condition(F, "DTotal").values == ("x2",)
    with pytest.raises(StructureError):
        check_condition(F, "Factivity")


def test_conditions_need_structure(scale):
    with pytest.raises(StructureError, match="selection"):
        check_condition(scale, "Id")
    with pytest.raises(NameError, match="did you mean 'Factivity'"):
        check_condition(scale, "Factivty")


@pytest.mark.parametrize("cond", ["Id", "Center", "MustCenter"])
def test_selection_conditions(conditional, cond):
    assert check_condition(conditional, cond) is None


def test_families(conditional):
    assert check_families(conditional) is None
    assert len(conditional.prop_family) == 10


def test_families_not_closed():
    F = path_frame(5, prop_family=[[], ["x1", "x2"], ["x1", "x2", "x3", "x4", "x5"]])
    w = check_families(F)
    assert w.law == "prop-family"
    assert "negation" in w.message


def test_bool_family_must_be_regular():
    with pytest.raises(ValidationError, match="not regular"):
        path_frame(5, bool_family=[["x1", "x3"]])


def test_r_and_i_must_agree():
    with pytest.raises(ValidationError, match="disagree"):
        path_frame(2, i={"x1": "x1", "x2": "x2"}, R={"x1": ["x1", "x2"], "x2": ["x2"]})


def test_functionalize():
    M = from_fixture("frames-scale-relational")
    G = relational_to_functional(M.frame)
    assert G.names == ["x1", "x2", "x3", "x4", "x5", "i(x2)", "i(x4)"]
    assert G.names[G.i[1]] == "i(x2)"
    assert G.names[G.i[0]] == "x1"
    assert G.compatible("i(x2)", "i(x4)")
    assert not G.compatible("i(x2)", "x5")
    assert is_epistemic(G)

    doc = from_fixture("frames-scale").frame.to_document()
    del doc["bool_family"]
    scale = CompatibilityFrame.from_document(doc)
    assert iso_check(proposition_lattice(G), proposition_lattice(scale)) is not None


def test_functionalize_needs_r(scale):
    with pytest.raises(StructureError):
        relational_to_functional(scale)


def test_product():
    a = from_fixture("frames-scale-relational").frame
    F = product(a, a, name="square")
    assert len(F) == 25
    assert F.compatible("(x1,x1)", "(x2,x2)")
    assert not F.compatible("(x1,x1)", "(x3,x1)")
    assert box_set(F, F.full) == F.full

    with pytest.raises(StructureError):
        product(from_fixture("frames-chain-5"), a)


def test_document(conditional):
    doc = conditional.to_document()
    F = CompatibilityFrame.from_document(doc)
    assert F.names == conditional.names
    assert F.nbr == conditional.nbr
    assert F.selection == conditional.selection
    assert F.prop_family == conditional.prop_family


def test_malformed_selection_row():
    doc = dict(
        kind="frame",
        possibilities=["x1", "x2"],
        i={"x1": "x1", "x2": "x2"},
        selection=[dict(antecedent=["x1"], to=["x1"])],
    )
    with pytest.raises(ValidationError, match="has 1 entries, expected 2"):
        CompatibilityFrame.from_document(doc)


def test_unknown_possibility(scale):
    with pytest.raises(ValidationError, match="did you mean 'x1'"):
        scale.index("x11")


def test_to_dot(scale):
    dot = scale.to_dot()
    assert dot.startswith("graph frame {")
    assert dot.count('kind="i"') == 7
    assert 'kind="refinement"' in dot


@pytest.mark.parametrize(
    "name",
    ["frames-chain-4", "frames-chain-5", "frames-cycle-4", "frames-scale", "frames-conditional", "frames-scale-relational"],
)
def test_refinement_agrees_with_propositions(name):
    F = from_fixture(name)
    F = getattr(F, "frame", F)
    for y in F.names:
        for x in F.names:
            assert refines(F, y, x) == refines_by_propositions(F, y, x), (y, x)


# Named propositions of the conditional frame
PROPOSITIONS = {
    "0": [],
    "[]P": ["x1"],
    "<>P&<>~P": ["x3"],
    "[]~P": ["x5"],
    "P": ["x1", "x2"],
    "~P": ["x4", "x5"],
    "[]Pv[]~P": ["x1", "x5", "u"],
    "<>P": ["x1", "x2", "x3", "y"],
    "<>~P": ["x3", "x4", "x5", "z"],
    "X": ["x1", "x2", "x3", "x4", "x5", "y", "z", "u"],
}

COLUMNS = ["0", "[]P", "<>P&<>~P", "[]~P", "P", "~P", "[]Pv[]~P", "<>P", "<>~P", "X"]

ARROWS = {
    "0": ["X"] * 10,
    "[]P": ["0", "X", "0", "0", "X", "0", "X", "X", "0", "X"],
    "<>P&<>~P": ["0", "0", "X", "0", "0", "0", "0", "X", "X", "X"],
    "[]~P": ["0", "0", "0", "X", "0", "X", "X", "0", "X", "X"],
    "P": ["0", "X", "0", "0", "X", "0", "X", "X", "0", "X"],
    "~P": ["0", "0", "0", "X", "0", "X", "X", "0", "X", "X"],
    "[]Pv[]~P": ["0", "P", "0", "~P", "P", "~P", "X", "P", "~P", "X"],
    "<>P": ["0", "[]P", "<>P&<>~P", "0", "P", "0", "[]P", "X", "<>P&<>~P", "X"],
    "<>~P": ["0", "0", "<>P&<>~P", "[]~P", "0", "~P", "[]~P", "<>P&<>~P", "X", "X"],
    "X": COLUMNS,
}


@pytest.mark.parametrize("antecedent", COLUMNS)
def test_arrow_table_row(conditional, antecedent):
    table = arrow_table(conditional)
    A = conditional.mask(PROPOSITIONS[antecedent])
    for consequent, expected in zip(COLUMNS, ARROWS[antecedent]):
        B = conditional.mask(PROPOSITIONS[consequent])
        assert table[(A, B)] == conditional.mask(PROPOSITIONS[expected]), (antecedent, consequent)
        assert arrow_set(conditional, A, B) == set(PROPOSITIONS[expected])


def _common_refinements(F):
    for x in range(F.n):
        for y in range(x + 1, F.n):
            if F.compatible(x, y) and not any(refines(F, z, x) and refines(F, z, y) for z in range(F.n)):
                return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_proposition_lattices_of_small_frames(n):
    for F in enumerate_frames("compatibility", n):
        L = proposition_lattice(F)
        # De Morgan and involution among the lattice laws
        assert check_lattice(L) is None, F
        distributive = check_property(L, "Distributive") is None
        assert distributive == _common_refinements(F), F


@pytest.mark.parametrize("name", ["frames-scale", "frames-chain-4", "frames-chain-5", "frames-cycle-4", "frames-conditional"])
def test_proposition_lattices_of_fixtures(name):
    F = getattr(from_fixture(name), "frame", from_fixture(name))
    L = proposition_lattice(F)
    assert check_lattice(L) is None
    assert (check_property(L, "Distributive") is None) == _common_refinements(F)


@pytest.mark.long_test
def test_functionalize_grid_cut():
    G = relational_to_functional(from_fixture("frames-grid-cut").frame)
    for c in ("IRegularity", "Factivity", "Knowability"):
        assert check_condition(G, c) is None, c
    assert is_epistemic(G)


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
