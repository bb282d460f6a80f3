#!/usr/bin/env python3

# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import pytest

from orthokit.logic import parse, parse_consecution
from orthokit.logic.formula import (
    BOT,
    TOP,
    And,
    Atom,
    BoolAtom,
    Box,
    Cond,
    Consecution,
    FormulaSyntaxError,
    FragmentTag,
    Neg,
    atoms,
    conjunction,
    depth,
    diamond,
    disjunction,
    is_boolean,
    size,
    subformula_closure,
    substitute,
    to_text,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("p", p),
        ("bot", BOT),
        ("top", TOP),
        ("~p & q", And(Neg(p), q)),
        ("p & q & r", And(And(p, q), r)),
        ("p & q -> r", Cond(And(p, q), r)),
        ("p -> q -> r", Cond(p, Cond(q, r))),
        ("p \\/ q & r", disjunction(p, And(q, r))),
        ("<>p", Neg(Box(Neg(p)))),
        ("[]~p", Box(Neg(p))),
        ("~(p & q)", Neg(And(p, q))),
        ("(p -> q) & r", And(Cond(p, q), r)),
        ("◇p ∧ ¬q", And(diamond(p), Neg(q))),
        ("p → □q", Cond(p, Box(q))),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "text",
    [
        "p \\/ q",
        "[]p & <>~p",
        "<>p & <>~p",
        "(p -> q) & r",
        "p & q -> r",
        "p -> q -> r",
        "(p -> q) -> r",
        "~(p & q)",
        "[](p \\/ q)",
        "~<>p",
    ],
)
def test_print(text):
    assert str(parse(text)) == text


def test_print_unicode():
    assert to_text(parse("<>p & ~q -> bot"), unicode=True) == "◇p ∧ ¬q → ⊥"


def test_sugar_is_not_kept():
    assert parse("p \\/ q") == parse("~(~p & ~q)")
    assert parse("<>p") == parse("~[]~p")
    # printing restores the sugar
    assert str(parse("~(~p & ~q)")) == "p \\/ q"


@pytest.mark.parametrize(
    "text,position",
    [
        ("p & ", 4),
        ("p $ q", 2),
        ("p q", 2),
        ("p)", 1),
        ("(p & q", 0),
        ("", 0),
    ],
)
def test_parse_error_position(text, position):
    with pytest.raises(FormulaSyntaxError) as e:
        parse(text)
    assert e.value.position == position
    assert e.value.text == text


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="Unbalanced parenthesis"):
        parse("((p)")


def test_bool_atoms():
    f = parse("b & p", bool_atoms=["b"])
    assert f == And(BoolAtom("b"), p)
    assert f != parse("b & p")


def test_consecution():
    c = parse_consecution("p & q |- q")
    assert c == Consecution(And(p, q), q)
    assert str(c) == "p & q |- q"
    assert parse_consecution("p ⊢ <>p").rhs == diamond(p)

    with pytest.raises(FormulaSyntaxError, match="expected '\\|-'"):
        parse_consecution("p & q")


@pytest.mark.parametrize(
    "text,names,expected",
    [
        ("b & ~c", ["b", "c"], FragmentTag.BOOLEAN),
        ("top", [], FragmentTag.BOOLEAN),
        ("p & q", [], FragmentTag.MODAL),
        ("[]b", ["b"], FragmentTag.MODAL),
        ("b -> c", ["b", "c"], FragmentTag.CONDITIONAL),
    ],
)
def test_is_boolean(text, names, expected):
    assert is_boolean(parse(text), names) is expected


def test_operators():
    assert p & q == And(p, q)
    assert ~p == Neg(p)


def test_conjunction():
    assert conjunction([p, q, r]) == parse("p & q & r")
    assert conjunction([p]) == p
    assert conjunction([]) == TOP


def test_substitute():
    assert substitute(parse("p -> []q"), {"q": parse("p & r")}) == parse("p -> [](p & r)")
    # simultaneous
    assert substitute(parse("p & q"), {"p": q, "q": p}) == parse("q & p")
    assert substitute(parse("b", bool_atoms=["b"]), {"b": p}) == p


def test_traversal():
    assert subformula_closure(parse("p & ~p")) == (p, Neg(p), And(p, Neg(p)))
    assert atoms(parse("p & b -> q"), parse("r")) == ("b", "p", "q", "r")
    assert size(parse("<>p")) == 4
    assert depth(parse("<>p")) == 3
    assert depth(p) == 0


if __name__ == "__main__":
    from orthokit.logic.testing import main

    main(__file__)
