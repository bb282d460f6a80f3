#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import json

import pytest

from orthokit.logic.cli import BUDGET, NEGATIVE, OK, USAGE, main


def test_cli_eval(capsys):
    assert main(["eval", "--model", "frames-scale", "--at", "x1", "[]p"]) == OK
    assert capsys.readouterr().out.strip() == "true"

    assert main(["eval", "--model", "frames-scale", "--at", "x2", "[]p"]) == NEGATIVE
    assert capsys.readouterr().out.strip() == "false"


def test_cli_eval_extension(capsys):
    assert main(["eval", "--model", "frames-scale", "<>p"]) == OK
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["extension"]) == {"x1", "x2", "x3", "y"}


def test_cli_parse(capsys):
    assert main(["parse", "p \\/ <>q", "--bool", "p"]) == OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["formula"] == "p \\/ <>q"
    assert doc["bool_atoms"] == ["p"]

    assert main(["parse", "p &"]) == USAGE
    assert "orthokit-logic" in capsys.readouterr().err


def test_cli_entails(capsys):
    assert main(["entails", "--frame", "frames-scale", "[]p", "p"]) == OK
    assert json.loads(capsys.readouterr().out) == {"result": "holds"}

    assert main(["entails", "--frame", "frames-scale", "<>p", "p"]) == NEGATIVE
    doc = json.loads(capsys.readouterr().out)
    assert doc

    assert main(["entails", "--lattice", "lattices-o6", "p & (q \\/ r)", "(p & q) \\/ (p & r)"]) == NEGATIVE
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "lattice-countermodel"


def test_cli_unknown_fixture(capsys):
    assert main(["entails", "--frame", "frames-scael", "p", "p"]) == USAGE
    assert "did you mean" in capsys.readouterr().err


def test_cli_usage():
    assert main([]) == USAGE
    assert main(["no-such-command"]) == USAGE


def test_cli_fixtures(capsys):
    assert main(["fixtures"]) == OK
    names = capsys.readouterr().out.split()
    assert "lattices-o6" in names
    assert "derivations-persistence" in names

    assert main(["fixtures", "--emit", "lattices-o6"]) == OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "lattice"


def test_cli_proof_check(capsys):
    assert main(["proof-check", "--derivation", "derivations-persistence"]) == OK
    capsys.readouterr()

    assert (
        main(
            [
                "proof-check",
                "--derivation",
                "derivations-qualified-collapse",
                "--profile",
                "CondModal+Identity+IfToOr+ModalizedImportExport",
            ]
        )
        == NEGATIVE
    )
    doc = json.loads(capsys.readouterr().out)
    assert doc["step"] == 16


def test_cli_prove(capsys):
    assert main(["prove", "--profile", "EO", "~p & <>p |- bot"]) == OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "derivation"

    assert main(["prove", "--profile", "EO", "--hint", "(p & q) -> p", "~p & <>p |- bot"]) == OK
    assert json.loads(capsys.readouterr().out)["kind"] == "derivation"

    assert main(["prove", "--profile", "O", "--bound", "p", "p & q |- q & p"]) == USAGE
    assert "too small" in capsys.readouterr().err


def test_cli_search(capsys):
    assert main(["search", "[]p |- p", "--max-size", "2"]) == OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "none-up-to-bound"

    assert main(["search", "<>p |- p", "--budget", "1"]) == BUDGET
    doc = json.loads(capsys.readouterr().out)
    assert doc["result"] == "budget-exhausted"


def test_cli_export_dot(capsys):
    assert main(["export-dot", "lattices-o6"]) == OK
    assert capsys.readouterr().out.startswith("digraph")


@pytest.mark.long_test
def test_cli_grid_lattice(capsys):
    assert main(["lattice-of", "--frame", "frames-grid", "--count-only"]) == OK
    assert capsys.readouterr().out.strip() == "1942"


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
