# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Formulas of the epistemic and conditional languages.

The abstract syntax has eight node kinds: :class:`Atom`, :class:`BoolAtom`,
:class:`Bot`, :class:`Top`, :class:`Neg`, :class:`And`, :class:`Box` and
:class:`Cond`. Disjunction and the diamond are sugar:

- ``a \\/ b`` is ``~(~a & ~b)``
- ``<>a`` is ``~[]~a``

The printer restores the sugar so that ``parse(str(f)) == f``.
"""

import enum
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Tuple

from orthokit.logic.core import ValidationError

LOG = logging.getLogger(__name__)


class FormulaSyntaxError(ValidationError):
    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class FragmentTag(enum.Enum):
    BOOLEAN = "Boolean"
    MODAL = "Modal"
    CONDITIONAL = "Conditional"


class Formula:
    """Base class of all formula nodes."""

    children: Tuple["Formula", ...] = ()

    def __str__(self):
        return to_text(self)

    def __and__(self, other):
        return And(self, other)

    def __invert__(self):
        return Neg(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name})"


@dataclass(frozen=True, repr=False)
class BoolAtom(Formula):
    name: str

    def __repr__(self):
        return f"BoolAtom({self.name})"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    child: Formula

    @property
    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"Neg({self.child!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    @property
    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Box(Formula):
    child: Formula

    @property
    def children(self):
        return (self.child,)

    def __repr__(self):
        return f"Box({self.child!r})"


@dataclass(frozen=True, repr=False)
class Cond(Formula):
    antecedent: Formula
    consequent: Formula

    @property
    def children(self):
        return (self.antecedent, self.consequent)

    def __repr__(self):
        return f"Cond({self.antecedent!r}, {self.consequent!r})"


BOT = Bot()
TOP = Top()


def disjunction(a, b):
    return Neg(And(Neg(a), Neg(b)))


def diamond(a):
    return Neg(Box(Neg(a)))


def conjunction(formulas):
    """Left-nested conjunction of a non-empty sequence."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result


def as_disjunction(f):
    """Return ``(a, b)`` when ``f`` is the desugared ``a \\/ b``, else ``None``."""
    if isinstance(f, Neg) and isinstance(f.child, And):
        left, right = f.child.left, f.child.right
        if isinstance(left, Neg) and isinstance(right, Neg):
            return left.child, right.child
    return None


def as_diamond(f):
    if isinstance(f, Neg) and isinstance(f.child, Box) and isinstance(f.child.child, Neg):
        return f.child.child.child
    return None


@dataclass(frozen=True)
class Consecution:
    """A single-premise statement ``lhs |- rhs``."""

    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"{to_text(self.lhs)} |- {to_text(self.rhs)}"

    def formulas(self):
        return (self.lhs, self.rhs)


# Printing

IMP, OR, AND, UNARY = 1, 2, 3, 4


def to_text(f: Formula, unicode: bool = False) -> str:
    symbols = (
        dict(neg="¬", box="□", dia="◇", conj=" ∧ ", disj=" ∨ ", cond=" → ", bot="⊥", top="⊤")
        if unicode
        else dict(neg="~", box="[]", dia="<>", conj=" & ", disj=" \\/ ", cond=" -> ", bot="bot", top="top")
    )

    def wrap(text, prec, needed):
        return f"({text})" if prec < needed else text

    def render(f):
        """Return (text, precedence)."""
        if isinstance(f, (Atom, BoolAtom)):
            return f.name, UNARY
        if isinstance(f, Bot):
            return symbols["bot"], UNARY
        if isinstance(f, Top):
            return symbols["top"], UNARY

        d = as_disjunction(f)
        if d is not None:
            lt, lp = render(d[0])
            rt, rp = render(d[1])
            return wrap(lt, lp, OR) + symbols["disj"] + wrap(rt, rp, AND), OR

        d = as_diamond(f)
        if d is not None:
            t, p = render(d)
            return symbols["dia"] + wrap(t, p, UNARY), UNARY

        if isinstance(f, Neg):
            t, p = render(f.child)
            return symbols["neg"] + wrap(t, p, UNARY), UNARY
        if isinstance(f, Box):
            t, p = render(f.child)
            return symbols["box"] + wrap(t, p, UNARY), UNARY
        if isinstance(f, And):
            lt, lp = render(f.left)
            rt, rp = render(f.right)
            return wrap(lt, lp, AND) + symbols["conj"] + wrap(rt, rp, UNARY), AND
        if isinstance(f, Cond):
            lt, lp = render(f.antecedent)
            rt, rp = render(f.consequent)
            return wrap(lt, lp, OR) + symbols["cond"] + wrap(rt, rp, IMP), IMP

        raise TypeError(f"Not a formula: {f!r}")

    return render(f)[0]


# Parsing

TOKENS = [
    ("TURNSTILE", r"\|-|⊢"),
    ("IMP", r"->|→"),
    ("OR", r"\\/|∨"),
    ("AND", r"&|∧"),
    ("NEG", r"~|¬"),
    ("BOX", r"\[\]|□"),
    ("DIA", r"<>|◇"),
    ("BOT", r"⊥"),
    ("TOP", r"⊤"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("NAME", r"[a-zA-Z][a-zA-Z0-9_]*"),
    ("SPACE", r"\s+"),
]

TOKEN_RE = re.compile("|".join(f"(?P<{k}>{v})" for k, v in TOKENS))

KEYWORDS = {"bot": "BOT", "top": "TOP"}


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"Unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "NAME" and value in KEYWORDS:
            kind = KEYWORDS[value]
        if kind != "SPACE":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class Parser:
    """Recursive descent parser.

    Grammar::

        formula := imp
        imp     := or ("->" imp)?
        or      := and ("\\/" and)*
        and     := unary ("&" unary)*
        unary   := ("~" | "[]" | "<>") unary | atom | "bot" | "top" | "(" formula ")"
    """

    def __init__(self, text, bool_atoms=()):
        self.text = text
        self.bool_atoms = frozenset(bool_atoms)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def error(self, message):
        raise FormulaSyntaxError(message, self.text, self.current[2])

    def accept(self, kind):
        if self.current[0] == kind:
            token = self.current
            self.index += 1
            return token
        return None

    def expect(self, kind, what):
        token = self.accept(kind)
        if token is None:
            if self.current[0] == "END":
                self.error(f"Unexpected end of input, expected {what}")
            self.error(f"Expected {what}, found {self.current[1]!r}")
        return token

    def parse(self):
        f = self.formula()
        if self.current[0] == "RPAREN":
            self.error("Unbalanced parenthesis")
        if self.current[0] != "END":
            self.error(f"Unexpected {self.current[1]!r}")
        return f

    def parse_consecution(self):
        lhs = self.formula()
        self.expect("TURNSTILE", "'|-'")
        rhs = self.formula()
        if self.current[0] != "END":
            self.error(f"Unexpected {self.current[1]!r}")
        return Consecution(lhs, rhs)

    def formula(self):
        return self.imp()

    def imp(self):
        left = self.disj()
        if self.accept("IMP"):
            return Cond(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.accept("OR"):
            left = disjunction(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.accept("AND"):
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.accept("NEG"):
            return Neg(self.unary())
        if self.accept("BOX"):
            return Box(self.unary())
        if self.accept("DIA"):
            return diamond(self.unary())
        if self.accept("BOT"):
            return BOT
        if self.accept("TOP"):
            return TOP
        token = self.accept("NAME")
        if token is not None:
            name = token[1]
            return BoolAtom(name) if name in self.bool_atoms else Atom(name)
        if self.current[0] == "LPAREN":
            start = self.current[2]
            self.index += 1
            f = self.formula()
            if self.current[0] != "RPAREN":
                raise FormulaSyntaxError("Unbalanced parenthesis", self.text, start)
            self.index += 1
            return f
        if self.current[0] == "END":
            self.error("Unexpected end of input")
        self.error(f"Unexpected {self.current[1]!r}")


def parse(text: str, bool_atoms: Iterable[str] = ()) -> Formula:
    """Parse a formula.

    Parameters
    ----------
    text : str
        ASCII or Unicode surface syntax.
    bool_atoms : iterable of str
        Names to read as Boolean atoms.

    Raises
    ------
    FormulaSyntaxError
        With the offending position.
    """
    if isinstance(text, Formula):
        return text
    return Parser(text, bool_atoms).parse()


def parse_consecution(text: str, bool_atoms: Iterable[str] = ()) -> Consecution:
    if isinstance(text, Consecution):
        return text
    return Parser(text, bool_atoms).parse_consecution()


# Classification and traversal


def walk(f: Formula):
    """Post-order traversal, children before parents."""
    for c in f.children:
        yield from walk(c)
    yield f


def subformula_closure(*formulas: Formula) -> Tuple[Formula, ...]:
    seen = {}
    for f in formulas:
        for g in walk(f):
            seen.setdefault(g, None)
    return tuple(seen)


def atoms(*formulas: Formula) -> Tuple[str, ...]:
    """Sorted names of the general atoms."""
    return tuple(sorted({g.name for f in formulas for g in walk(f) if isinstance(g, Atom)}))


def bool_atoms(*formulas: Formula) -> Tuple[str, ...]:
    return tuple(sorted({g.name for f in formulas for g in walk(f) if isinstance(g, BoolAtom)}))


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


def depth(f: Formula) -> int:
    if not f.children:
        return 0
    return 1 + max(depth(c) for c in f.children)


def is_boolean(f: Formula, bool_atoms: Iterable[str] = ()) -> FragmentTag:
    names = set(bool_atoms)
    nodes = list(walk(f))
    if any(isinstance(g, Cond) for g in nodes):
        return FragmentTag.CONDITIONAL
    if any(isinstance(g, Box) for g in nodes):
        return FragmentTag.MODAL
    if all(g.name in names for g in nodes if isinstance(g, Atom)):
        return FragmentTag.BOOLEAN
    return FragmentTag.MODAL


def substitute(f: Formula, mapping) -> Formula:
    """Replace atoms (general or Boolean) by formulas, simultaneously."""
    if isinstance(f, (Atom, BoolAtom)):
        return mapping.get(f.name, f)
    if isinstance(f, Neg):
        return Neg(substitute(f.child, mapping))
    if isinstance(f, Box):
        return Box(substitute(f.child, mapping))
    if isinstance(f, And):
        return And(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Cond):
        return Cond(substitute(f.antecedent, mapping), substitute(f.consequent, mapping))
    return f
