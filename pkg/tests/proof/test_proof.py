#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import settings
from orthokit.logic.core import StructureError, ValidationError
from orthokit.logic.fixtures import from_fixture, list_fixtures
from orthokit.logic.formula import parse, parse_consecution
from orthokit.logic.frame import is_epistemic
from orthokit.logic.proof import (
    BadStep,
    Derivation,
    LogicProfile,
    Unknown,
    check_derivation,
    check_soundness,
    default_bound,
    rk_rule,
    saturate,
)
from orthokit.logic.testing import path_frame

DERIVATIONS = [n for n in list_fixtures() if n.startswith("derivations-")]


def test_profile_parse():
    profile = LogicProfile.parse("CondModal+ModalizedMP+Identity")
    assert str(profile) == "CondModal+Identity+ModalizedMP"
    assert LogicProfile.parse(profile) is profile
    assert profile == LogicProfile.parse("CondModal + Identity + ModalizedMP")

    with pytest.raises(NameError):
        LogicProfile.parse("Ortho")

    with pytest.raises(NameError):
        LogicProfile.parse("EO+Wittgensteins")


def test_profile_rules():
    o = LogicProfile.parse("O")
    eo = LogicProfile.parse("EO")
    assert set(o.rule_ids) == {str(k) for k in range(1, 10)}
    assert "13" in eo.rule_ids and "14" in eo.rule_ids
    assert "15" not in eo.rule_ids
    assert "15" in LogicProfile.parse("EOplus").rule_ids

    assert eo.includes(o)
    assert not o.includes(eo)

    with pytest.raises(StructureError, match="not enabled"):
        o.lookup("13")


def test_profile_rk_arity():
    profile = LogicProfile.parse("CondModal")
    assert len(profile.lookup("RK")) == 4

    with settings.temporary("rk-arity-cap", 2):
        short = LogicProfile.parse("CondModal")
    assert len(short.lookup("RK")) == 2
    assert profile.includes(short)
    assert not short.includes(profile)


def test_rk_rule():
    rule = rk_rule(2)
    assert rule.premises == (parse_consecution("q1 & q2 |- r"),)
    assert rule.conclusions == (parse_consecution("(p -> q1) & (p -> q2) |- p -> r"),)


@pytest.mark.parametrize("name", DERIVATIONS)
def test_bundled_derivations(name):
    d = from_fixture(name)
    assert isinstance(d, Derivation)
    assert check_derivation(None, d) is None, name


def test_qualified_collapse_needs_distributivity():
    d = from_fixture("derivations-qualified-collapse")
    bad = check_derivation("CondModal+Identity+IfToOr+ModalizedImportExport", d)
    assert isinstance(bad, BadStep)
    assert bad.index == 16
    assert "Distributivity" in bad.reason


def _derivation(steps, **kwargs):
    return Derivation.from_document(dict(kind="derivation", steps=steps, **kwargs))


def test_check_premise_order():
    d = _derivation(
        [
            {"seq": "p |- p", "by": "1"},
            {"seq": "p |- p", "by": "7", "from": [1, 0]},
        ]
    )
    bad = check_derivation("O", d)
    assert bad.index == 1
    assert "earlier" in bad.reason


def test_check_not_an_instance():
    d = _derivation([{"seq": "p |- q", "by": "1"}])
    bad = check_derivation("O", d)
    assert bad.index == 0
    assert "not an instance of rule 1" in bad.reason


def test_check_hypotheses():
    d = _derivation(
        [
            {"seq": "p |- q", "by": "hypothesis"},
            {"seq": "~q |- ~p", "by": "9", "from": [0]},
        ],
        hypotheses=["p |- q"],
    )
    assert check_derivation("O", d) is None

    d = _derivation([{"seq": "q |- p", "by": "hypothesis"}], hypotheses=["p |- q"])
    assert check_derivation("O", d).index == 0


def test_check_proves():
    d = _derivation([{"seq": "p |- p", "by": "1"}], proves=["q |- q"])
    bad = check_derivation("O", d)
    assert bad.index is None
    assert "not derived" in str(bad)


def test_derivation_document():
    d = from_fixture("derivations-persistence")
    doc = d.to_document()
    assert doc["kind"] == "derivation"
    again = Derivation.from_document(doc)
    assert [s.seq for s in again.steps] == [s.seq for s in d.steps]
    assert again.profile == d.profile

    with pytest.raises(ValidationError):
        Derivation.from_document({"steps": [{"by": "1"}]})


def test_saturate_commutativity():
    d = saturate("O", "p & q |- q & p")
    assert isinstance(d, Derivation)
    assert d.conclusion == parse_consecution("p & q |- q & p")
    assert check_derivation("O", d) is None


def test_saturate_epistemic_contradiction():
    bound = ["p & <>~p", "bot", "p", "~~p", "<>~p", "~~p & <>~p"]
    d = saturate("EO", "p & <>~p |- bot", bound=bound)
    assert isinstance(d, Derivation)
    assert check_derivation("EO", d) is None


def test_saturate_unknown():
    result = saturate("O", "p & (q \\/ r) |- (p & q) \\/ (p & r)")
    assert isinstance(result, Unknown)
    assert not result
    assert result.to_document()["result"] == "unknown"


def test_saturate_bound_too_small():
    with pytest.raises(ValidationError, match="too small"):
        saturate("O", "p & q |- q & p", bound=["p", "q"])


QUALIFIED_COLLAPSE = "q & (q -> <>(q & p)) |- p -> q"

# Pivot formulas of the proof through full distributivity
QUALIFIED_COLLAPSE_HINTS = [
    "(q & p) -> (q & p)",
    "(q -> <>(q & p)) & ((q & p) -> q)",
    "(q -> <>(q & p)) & (q -> (p -> q))",
    "q & (~q \\/ (p -> q))",
    "(q & ~q) \\/ (q & (p -> q))",
]


@pytest.mark.long_test
def test_saturate_qualified_collapse():
    profile = "CondModal+Identity+IfToOr+ModalizedImportExport+Distributivity"
    d = saturate(profile, QUALIFIED_COLLAPSE, hints=QUALIFIED_COLLAPSE_HINTS)
    assert isinstance(d, Derivation), d
    assert d.conclusion == parse_consecution(QUALIFIED_COLLAPSE)
    assert check_derivation(profile, d) is None
    assert "Distributivity" in [step.by for step in d.steps]


@pytest.mark.long_test
def test_saturate_stalls_without_distributivity():
    profile = "CondModal+Identity+IfToOr+ModalizedImportExport"
    result = saturate(profile, QUALIFIED_COLLAPSE, hints=QUALIFIED_COLLAPSE_HINTS)
    assert isinstance(result, Unknown)


def test_saturate_hints_extend_default_bound():
    goal = parse_consecution("p |- p \\/ q")
    assert parse("(p & q) -> p") not in default_bound(goal)
    assert parse("(p & q) -> p") in default_bound(goal, [parse("(p & q) -> p")])
    assert parse("~~(p & q)") in default_bound(goal, [parse("(p & q) -> p")])


def test_soundness_conditional():
    report = check_soundness("CondModal+Identity+ModalizedMP", from_fixture("frames-conditional").frame)
    assert report.ok, report.violations
    assert "Identity" in report.checked


def test_soundness_eoplus():
    F = from_fixture("frames-scale").frame
    report = check_soundness("EOplus", F)
    assert report.ok, report.violations
    assert "15" in report.checked


def test_soundness_violation():
    F = from_fixture("frames-scale").frame
    report = check_soundness("EO+Distributivity", F, samples=100000, seed=7)
    assert not report
    assert "Distributivity" in [v.law for v in report.violations]

    again = check_soundness("EO+Distributivity", F, samples=100000, seed=7)
    assert [str(v) for v in again.violations] == [str(v) for v in report.violations]


@pytest.mark.parametrize("name", ["frames-scale", "frames-conditional"])
def test_soundness_eoplus_sweep(name):
    F = from_fixture(name).frame
    assert is_epistemic(F) and F.bool_family is not None
    report = check_soundness("EOplus", F, samples=200)
    assert report.ok, report.violations
    assert set(report.checked) >= {"13", "14", "15"}
    assert all(0 < count <= 200 for count in report.checked.values())


def test_soundness_frame_class():
    with pytest.raises(StructureError):
        check_soundness("EO", path_frame(3))


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
