#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import math

import pytest

from orthokit.logic import settings
from orthokit.logic.core import BudgetExceeded, ValidationError
from orthokit.logic.fixtures import from_fixture
from orthokit.logic.frame import check_condition
from orthokit.logic.lattice import iso_check
from orthokit.logic.search import (
    BudgetExhausted,
    LatticeCountermodel,
    NoneUpToBound,
    SearchSpec,
    automorphism_count,
    canonical_form,
    enumerate_frames,
    enumerate_lattices,
    find_countermodel,
    grounded_families,
    labelled_count,
    qualified_collapse_hunt,
)
from orthokit.logic.semantics import Countermodel
from orthokit.logic.testing import path_frame


def test_compatibility_counts():
    assert labelled_count("compatibility", 4) == 64
    assert len(list(enumerate_frames("compatibility", 4))) == 11


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 12)])
def test_epistemic_counts(n, expected):
    assert len(list(enumerate_frames("epistemic", n))) == expected


def test_epistemic_labelled_count():
    assert labelled_count("epistemic", 1) == 1
    assert labelled_count("epistemic", 2) == 5


def test_size_cap():
    with pytest.raises(BudgetExceeded):
        list(enumerate_frames("epistemic", 7))

    with settings.temporary("epistemic-size-cap", 2):
        with pytest.raises(BudgetExceeded):
            list(enumerate_frames("epistemic", 3))

    with pytest.raises(ValidationError):
        list(enumerate_frames("compatibility", 0))


@pytest.mark.parametrize(
    "cls,n",
    [
        ("compatibility", 1),
        ("compatibility", 2),
        ("compatibility", 3),
        pytest.param("compatibility", 4, marks=pytest.mark.long_test),
        ("epistemic", 1),
        ("epistemic", 2),
        ("epistemic", 3),
        pytest.param("epistemic", 4, marks=pytest.mark.long_test),
    ],
)
def test_orbits_cover_labelled_frames(cls, n):
    orbits = sum(math.factorial(n) // automorphism_count(F) for F in enumerate_frames(cls, n))
    assert orbits == labelled_count(cls, n)


def test_canonical_form():
    path = [0b011, 0b111, 0b110]
    middle_first = [0b111, 0b011, 0b101]
    assert canonical_form(3, path)[0] == canonical_form(3, middle_first)[0]
    assert canonical_form(3, path)[0] != canonical_form(3, [0b001, 0b110, 0b110])[0]


def test_automorphism_count():
    assert automorphism_count(path_frame(3)) == 2
    assert automorphism_count(path_frame(4, cycle=True)) == 8


def test_grounded_families():
    F = from_fixture("frames-scale").frame
    families = grounded_families(F)
    assert families[0] == (0, F.full)
    assert len(set(families)) == len(families)


def test_ortholattices_of_size_6():
    found = list(enumerate_lattices("ortholattice", 6))
    assert len(found) == 2
    for name in ("lattices-o6", "lattices-mo2"):
        L = from_fixture(name)
        assert sum(iso_check(L, M, ortho_only=True) is not None for M in found) == 1


def test_valid_up_to_bound():
    result = find_countermodel(SearchSpec("[]p |- p", "epistemic", max_size=3))
    assert isinstance(result, NoneUpToBound)
    assert not result
    assert sorted(result.log.sizes) == [1, 2, 3]
    assert result.to_document()["result"] == "none-up-to-bound"


def test_budget_exhausted():
    result = find_countermodel(SearchSpec("<>p |- p", "epistemic", max_size=4, budget=1))
    assert isinstance(result, BudgetExhausted)
    assert not result
    assert result.size == 1
    assert result.to_document()["result"] == "budget-exhausted"


@pytest.mark.long_test
@pytest.mark.search
def test_diamond_not_factive():
    # nothing up to four possibilities
    assert isinstance(find_countermodel(SearchSpec("<>p |- p", "epistemic", max_size=4)), NoneUpToBound)

    cm = find_countermodel(SearchSpec("<>p |- p", "epistemic", max_size=5))
    assert isinstance(cm, Countermodel)
    assert cm.frame.n == 5
    assert sorted(cm.log.sizes) == [1, 2, 3, 4, 5]
    assert cm.model.forces(cm.at, cm.consecution.lhs)
    assert not cm.model.forces(cm.at, cm.consecution.rhs)
    assert cm.log.instances > 0


@pytest.mark.long_test
@pytest.mark.search
def test_search_independent_of_threads():
    spec = SearchSpec("<>p |- p", "epistemic", max_size=5)
    one = find_countermodel(spec, threads=1)
    three = find_countermodel(spec, threads=3)
    assert isinstance(one, Countermodel) and isinstance(three, Countermodel)
    assert str(one) == str(three)
    assert one.frame.to_document() == three.frame.to_document()


@pytest.mark.long_test
@pytest.mark.search
def test_epistemic_contradiction_valid():
    result = find_countermodel(SearchSpec("~p & <>p |- bot", "epistemic", max_size=5))
    assert isinstance(result, NoneUpToBound)


def test_search_on_lattices():
    spec = SearchSpec("p & (q \\/ r) |- (p & q) \\/ (p & r)", "ortholattice", max_size=6, lattices=True)
    result = find_countermodel(spec)
    assert isinstance(result, LatticeCountermodel)
    assert result.lattice.n == 6
    assert result.to_document()["kind"] == "lattice-countermodel"


def test_search_document():
    doc = {
        "goal": "ModalizedMP",
        "class": "conditional",
        "max_size": 2,
        "constraints": ["Id"],
        "requires": ["Identity"],
    }
    spec = SearchSpec.from_document(doc)
    assert spec.goal.name == "ModalizedMP"
    assert spec.frame_class.value == "conditional"
    again = SearchSpec.from_document(spec.to_document())
    assert again.to_document() == spec.to_document()

    with pytest.raises(ValidationError):
        SearchSpec.from_document({"class": "epistemic"})

    with pytest.raises(ValidationError):
        SearchSpec("[]p |- p", max_size=0)


def test_qualified_collapse_hunt():
    cm = qualified_collapse_hunt(max_size=3)
    assert isinstance(cm, Countermodel)
    assert cm.frame.n <= 3
    assert cm.frame.selection is not None
    assert "fails at x2 with p={x1,x2}, q={x2}" in str(cm)
    assert cm.model.forces(cm.at, cm.consecution.lhs)
    assert not cm.model.forces(cm.at, cm.consecution.rhs)


HUNTED = ["Identity", "Flattening", "ModalizedMP", "MustIntroduction", "MustPreservation", "MustIfCombination"]


@pytest.mark.long_test
@pytest.mark.search
def test_qualified_collapse_hunt_with_principles():
    result = qualified_collapse_hunt(HUNTED, max_size=3, budget=2_000_000)
    assert isinstance(result, (Countermodel, NoneUpToBound, BudgetExhausted))
    assert result.log.sizes
    if isinstance(result, Countermodel):
        for condition in ("Id", "Flat", "MustCenter", "Update", "Preserve", "Combine"):
            assert check_condition(result.frame, condition) is None, condition


def test_qualified_collapse_hunt_unknown_principle():
    with pytest.raises(NameError, match="Unknown principle or constraint"):
        qualified_collapse_hunt(["Identiy"])


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
