# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from orthokit.logic.core import Base, BudgetExceeded, StructureError, ValidationError
from orthokit.logic.core.settings import SETTINGS
from orthokit.logic.formula import (
    And,
    Atom,
    Bot,
    Box,
    BoolAtom,
    Cond,
    Consecution,
    Formula,
    Neg,
    Top,
    atoms,
    bool_atoms,
    parse,
    parse_consecution,
)
from orthokit.logic.frame import (
    CompatibilityFrame,
    FrameCondition,
    RegularSet,
    frame_to_dot,
    product,
    relational_to_functional,
)
from orthokit.logic.utils import bitset
from orthokit.logic.utils.humanize import did_you_mean

LOG = logging.getLogger(__name__)


def _evaluate(F: CompatibilityFrame, valuation: Dict[str, int], f: Formula, cache=None) -> int:
    if cache is None:
        cache = {}

    def ev(g):
        if g in cache:
            return cache[g]
        if isinstance(g, (Atom, BoolAtom)):
            try:
                r = valuation[g.name]
            except KeyError:
                raise ValidationError(f"Valuation does not assign atom '{g.name}'") from None
        elif isinstance(g, Bot):
            r = 0
        elif isinstance(g, Top):
            r = F.full
        elif isinstance(g, Neg):
            r = F._neg(ev(g.child))
        elif isinstance(g, And):
            r = ev(g.left) & ev(g.right)
        elif isinstance(g, Box):
            r = F._box(ev(g.child))
        elif isinstance(g, Cond):
            A = ev(g.antecedent)
            if not F.is_proposition(A):
                raise ValidationError(
                    f"Antecedent {g.antecedent} denotes {F.set_name(A)}, which is not a proposition of {F!r}"
                )
            r = F._arrow(A, ev(g.consequent))
        else:
            raise TypeError(f"Not a formula: {g!r}")
        cache[g] = r
        return r

    return ev(f)


class PossibilityModel(Base):
    """A frame together with a valuation of atoms into its regular sets.

    Boolean atoms must be valued in the Boolean family; when the frame
    declares its propositions, general atoms must be valued in them.
    """

    def __init__(self, frame: CompatibilityFrame, valuation, bool_atoms: Iterable[str] = (), validate=True):
        self.frame = frame
        self.valuation = {str(k): frame.mask(v) for k, v in valuation.items()}
        self.bool_atoms = frozenset(bool_atoms)
        if validate:
            self._validate()

    def _validate(self):
        F = self.frame
        for name in sorted(self.bool_atoms):
            if name not in self.valuation:
                raise ValidationError(f"Boolean atom '{name}' has no value")
        for name, A in sorted(self.valuation.items()):
            if not F._is_regular(A):
                raise ValidationError(f"V({name}) = {F.set_name(A)} is not regular")
            if name in self.bool_atoms:
                if F.bool_family is None:
                    raise StructureError(f"Boolean atom '{name}' needs a Boolean family on {F!r}")
                if A not in F.bool_family:
                    raise ValidationError(f"V({name}) = {F.set_name(A)} is not in the Boolean family")
            elif F.declares_prop_family and not F.is_proposition(A):
                raise ValidationError(f"V({name}) = {F.set_name(A)} is not a proposition")

    def parse(self, text):
        return parse(text, self.bool_atoms)

    def extension(self, f) -> RegularSet:
        return RegularSet(self.frame, _evaluate(self.frame, self.valuation, self.parse(f)))

    def forces(self, x, f) -> bool:
        return bitset.contains(self.extension(f).mask, self.frame.index(x))

    def __repr__(self):
        return f"PossibilityModel({self.frame!r}, atoms={sorted(self.valuation)})"

    # Constructions

    @classmethod
    def product(cls, M1: "PossibilityModel", M2: "PossibilityModel", name=None) -> "PossibilityModel":
        """Model on the product frame where an atom holds at ``(x, y)`` if it holds at ``x`` or at ``y``."""
        F = product(M1.frame, M2.frame, name=name)
        pairs = F.components[2]
        valuation = {}
        for atom in sorted(set(M1.valuation) | set(M2.valuation)):
            A1 = M1.valuation.get(atom, 0)
            A2 = M2.valuation.get(atom, 0)
            valuation[atom] = bitset.from_indices(
                k for k, (a, b) in enumerate(pairs) if bitset.contains(A1, a) or bitset.contains(A2, b)
            )
        return cls(F, valuation, M1.bool_atoms | M2.bool_atoms)

    def functionalize(self) -> "PossibilityModel":
        """Move to the functional frame; a fresh ``i(x)`` satisfies an atom if every R-successor of ``x`` does."""
        G = relational_to_functional(self.frame)
        valuation = {}
        for atom, A in self.valuation.items():
            fresh = [f for f, successors in G.origin.items() if bitset.is_subset(successors, A)]
            valuation[atom] = A | bitset.from_indices(fresh)
        return PossibilityModel(G, valuation, self.bool_atoms)

    # Documents

    def to_document(self):
        doc = self.frame.to_document()
        doc["kind"] = "model"
        doc["valuation"] = {k: bitset.to_names(v, self.frame.names) for k, v in sorted(self.valuation.items())}
        if self.bool_atoms:
            doc["bool_atoms"] = sorted(self.bool_atoms)
        return doc

    @classmethod
    def from_document(cls, doc, validate=True):
        frame = CompatibilityFrame.from_document(doc, validate=validate)
        try:
            valuation = doc["valuation"]
        except KeyError:
            raise ValidationError("Model document has no valuation") from None
        return cls(frame, valuation, doc.get("bool_atoms", ()), validate=validate)

    def to_dot(self):
        return frame_to_dot(self.frame)


def extension(M: PossibilityModel, f) -> RegularSet:
    """``{x | M, x forces f}``."""
    return M.extension(f)


def forces(M: PossibilityModel, x, f) -> bool:
    return M.forces(x, f)


class Countermodel(Base):
    """A valuation on a frame and a possibility where a consecution fails."""

    def __init__(self, frame, valuation, at, consecution, bool_atoms=(), law=None, direction=None):
        self.frame = frame
        self.valuation = dict(valuation)
        self.at = at
        self.consecution = consecution
        self.bool_atoms = frozenset(bool_atoms)
        self.law = law
        self.direction = direction

    @property
    def possibility(self):
        return self.frame.names[self.at]

    @property
    def substitution(self):
        return {k: self.frame.set_name(v) for k, v in sorted(self.valuation.items())}

    @property
    def model(self):
        return PossibilityModel(self.frame, self.valuation, self.bool_atoms, validate=False)

    def __repr__(self):
        return f"Countermodel({self.consecution}, at={self.possibility}, {self.substitution})"

    def __str__(self):
        values = ", ".join(f"{k}={v}" for k, v in self.substitution.items())
        label = f"{self.law}: " if self.law else ""
        return f"{label}{self.consecution} fails at {self.possibility} with {values}"

    def to_document(self):
        doc = dict(
            kind="countermodel",
            consecution=str(self.consecution),
            at=self.possibility,
            valuation={k: bitset.to_names(v, self.frame.names) for k, v in sorted(self.valuation.items())},
            frame=self.frame.to_document(),
        )
        if self.bool_atoms:
            doc["bool_atoms"] = sorted(self.bool_atoms)
        if self.law:
            doc["law"] = self.law
        if self.direction:
            doc["direction"] = self.direction
        return doc

    def to_dot(self):
        return frame_to_dot(self.frame)


def _domains(F: CompatibilityFrame, general, boolean, what):
    domains = []
    for _ in general:
        domains.append(F.prop_family)
    for _ in boolean:
        if F.bool_family is None:
            raise StructureError(f"{what} has Boolean atoms but {F!r} has no Boolean family")
        domains.append(F.bool_family)

    count = 1
    for d in domains:
        count *= len(d)
    cap = SETTINGS.get("instantiation-cap")
    if count > cap:
        raise BudgetExceeded(what, count, cap)
    LOG.debug("%s: %s instances on %r", what, f"{count:,}", F)
    return domains


def _valuations(F, general, boolean, what):
    names = list(general) + list(boolean)
    for values in itertools.product(*_domains(F, general, boolean, what)):
        yield dict(zip(names, values))


def entails_on_frame(F: CompatibilityFrame, f, g=None, bool_names: Iterable[str] = ()) -> Optional[Countermodel]:
    """Check ``f |- g`` on every valuation and possibility of ``F``.

    ``f`` may also be a :class:`~orthokit.logic.formula.Consecution` or
    its text, in which case ``g`` is omitted. Valuations are enumerated in
    lexicographic order of proposition indices, then possibilities in index
    order; the first failure is returned, ``None`` when the consecution is
    valid on ``F``.

    Raises
    ------
    BudgetExceeded
        When the number of valuations exceeds the ``instantiation-cap`` setting.
    """
    if g is None:
        seq = parse_consecution(f, bool_names)
    else:
        seq = Consecution(parse(f, bool_names), parse(g, bool_names))
    general = atoms(seq.lhs, seq.rhs)
    boolean = bool_atoms(seq.lhs, seq.rhs)

    for v in _valuations(F, general, boolean, str(seq)):
        cache = {}
        failing = _evaluate(F, v, seq.lhs, cache) & ~_evaluate(F, v, seq.rhs, cache)
        if failing:
            return Countermodel(F, v, bitset.lowest(failing), seq, boolean)
    return None


def valid_on_frame(F: CompatibilityFrame, f, bool_names: Iterable[str] = ()) -> Optional[Countermodel]:
    return entails_on_frame(F, Consecution(Top(), parse(f, bool_names)))


# Principles


@dataclass(frozen=True)
class PrincipleSchema:
    """An inferential principle over metavariables ``p, q, r`` (general) and ``a, b, c`` (Boolean).

    ``premises`` turn the schema into a rule, checked per valuation:
    whenever every premise holds everywhere, the conclusion must.
    ``both_ways`` schemas are checked in both directions.
    """

    name: str
    text: str
    premises: Tuple[str, ...] = ()
    both_ways: bool = False
    description: str = ""

    BOOL_METAVARIABLES = ("a", "b", "c")

    @property
    def conclusion(self) -> Consecution:
        return parse_consecution(self.text, self.BOOL_METAVARIABLES)

    @property
    def premise_consecutions(self):
        return tuple(parse_consecution(p, self.BOOL_METAVARIABLES) for p in self.premises)

    def consecutions(self):
        seq = self.conclusion
        yield "forward", seq
        if self.both_ways:
            yield "backward", Consecution(seq.rhs, seq.lhs)

    def formulas(self):
        for seq in (self.conclusion,) + self.premise_consecutions:
            yield seq.lhs
            yield seq.rhs

    @property
    def metavariables(self):
        fs = list(self.formulas())
        return atoms(*fs), bool_atoms(*fs)

    def __str__(self):
        text = self.text.replace(" |- ", " -||- ") if self.both_ways else self.text
        if self.premises:
            return f"if {'; '.join(self.premises)} then {text}"
        return text


_SCHEMAS = [
    # Conditional principles paired with selection constraints
    PrincipleSchema("Identity", "p |- q -> q"),
    PrincipleSchema("SimpleMP", "(p -> b) & p |- b", description="Simple Modus Ponens"),
    PrincipleSchema("SimpleCS", "p & b |- p -> b", description="Simple Conjunctive Sufficiency"),
    PrincipleSchema("SimpleMT", "(p -> b) & ~b |- ~p", description="Simple Modus Tollens"),
    PrincipleSchema("ModalizedMP", "(p -> q) & []p |- q", description="Modalized Modus Ponens"),
    PrincipleSchema("ModalizedCS", "[]p & q |- p -> q", description="Modalized Conjunctive Sufficiency"),
    PrincipleSchema("ModalizedMT", "(p -> q) & ~q |- ~[]p", description="Modalized Modus Tollens"),
    PrincipleSchema("MustIntroduction", "r |- p -> []q", premises=("p |- q",)),
    PrincipleSchema("SimpleMustImport", "[](p -> b) |- p -> []b"),
    PrincipleSchema("SafeMustExport", "b -> []q |- [](b -> q)"),
    PrincipleSchema("MustPreservation", "<>(p & q) & []q |- p -> []q"),
    PrincipleSchema("Flattening", "p -> ((p & q) -> r) |- (p & q) -> r", both_ways=True),
    PrincipleSchema("WeakBoethius", "<>p & (p -> q) |- ~(p -> ~q)"),
    PrincipleSchema("MustIfCombination", "p -> q |- ~p \\/ ([]p & (p -> q))"),
    PrincipleSchema("SafeNegationImport", "~(b -> q) |- b -> ~q"),
    PrincipleSchema("SafeCEMPlus", "b -> (q \\/ r) |- (b -> q) \\/ (b -> r)"),
    # Structural and modal laws
    PrincipleSchema("Distributivity", "p & (q \\/ r) |- (p & q) \\/ (p & r)"),
    PrincipleSchema("BooleanDistributivity", "a & (b \\/ c) |- (a & b) \\/ (a & c)"),
    PrincipleSchema("WittgensteinLaw", "~p & <>p |- bot"),
    PrincipleSchema("DisjunctiveSyllogism", "(p \\/ q) & ~p |- q"),
    PrincipleSchema("Orthomodularity", "q |- p \\/ (~p & q)", premises=("p |- q",)),
    PrincipleSchema("T", "[]p |- p"),
    PrincipleSchema("Four", "[]p |- [][]p"),
    PrincipleSchema("Five", "<>p |- []<>p"),
    PrincipleSchema("B", "p |- []<>p"),
    # Conditional laws studied as targets
    PrincipleSchema("IfToOr", "p -> q |- ~p \\/ q"),
    PrincipleSchema("QualifiedCollapse", "q & (q -> <>(q & p)) |- p -> q"),
    PrincipleSchema(
        "ModalizedImportExport",
        "(p -> <>(p & q)) & (p -> (q -> r)) |- (p -> <>(p & q)) & ((p & q) -> r)",
        both_ways=True,
    ),
    # Derived principles
    PrincipleSchema("ModalizedCautiousTransitivity", "(p -> []q) & ((p & q) -> r) |- p -> r"),
    PrincipleSchema("ModalizedCautiousMonotonicity", "(p -> []q) & (p -> r) |- (p & q) -> r"),
    PrincipleSchema("ModalizedReciprocity", "(p -> []q) & (q -> []p) & (p -> r) |- q -> r"),
    PrincipleSchema("SimpleCautiousTransitivity", "(p -> q) & ((p & q) -> b) |- p -> b"),
    PrincipleSchema("SimpleCautiousMonotonicity", "(p -> q) & (p -> b) |- (p & q) -> b"),
    PrincipleSchema("SimpleReciprocity", "(p -> q) & (q -> p) & (p -> b) |- q -> b"),
    PrincipleSchema("Persistence", "p -> <>(p & q) |- p -> (q -> [](p & q))"),
    PrincipleSchema(
        "ModalizedLifting",
        "(p -> <>(p & q)) & (p -> (q -> r)) |- (p -> <>(p & q)) & (p -> ((p & q) -> r))",
        both_ways=True,
    ),
    PrincipleSchema("ModalizedOrToIfMust", "<>~a & [](a \\/ b) |- ~a -> []b"),
    PrincipleSchema("ModalizedOrToIf", "<>~a & [](a \\/ b) |- ~a -> b"),
]

PRINCIPLES = {s.name: s for s in _SCHEMAS}

# Principles validated by each selection constraint
CONSTRAINT_PRINCIPLES = {
    FrameCondition.ID: ("Identity",),
    FrameCondition.CENTER: ("SimpleMP", "SimpleCS"),
    FrameCondition.COMP: ("SimpleMT",),
    FrameCondition.MUST_CENTER: ("ModalizedMP", "ModalizedCS"),
    FrameCondition.MUST_COMP: ("ModalizedMT",),
    FrameCondition.UPDATE: ("MustIntroduction",),
    FrameCondition.MUST_IMP: ("SimpleMustImport",),
    FrameCondition.MUST_EXP: ("SafeMustExport",),
    FrameCondition.PRESERVE: ("MustPreservation",),
    FrameCondition.FLAT: ("Flattening",),
    FrameCondition.CONS: ("WeakBoethius",),
    FrameCondition.COMBINE: ("MustIfCombination",),
    FrameCondition.SWITCH: ("SafeNegationImport",),
    FrameCondition.SPLIT: ("SafeCEMPlus",),
}

CONDITIONAL_PRINCIPLES = tuple(name for names in CONSTRAINT_PRINCIPLES.values() for name in names)


def principle(name) -> PrincipleSchema:
    if isinstance(name, PrincipleSchema):
        return name
    if name in PRINCIPLES:
        return PRINCIPLES[name]
    key = str(name).replace("-", "").replace("_", "").replace("+", "Plus").lower()
    for k, s in PRINCIPLES.items():
        if k.lower() == key:
            return s
    correction = did_you_mean(str(name), PRINCIPLES.keys())
    hint = f", did you mean '{correction}'?" if correction else ""
    raise NameError(f"Unknown principle '{name}'{hint}")


def principles_for(conditions) -> Tuple[str, ...]:
    """Principles paired with the given selection constraints."""
    result = []
    for c in conditions:
        result.extend(CONSTRAINT_PRINCIPLES.get(FrameCondition.lookup(c), ()))
    return tuple(result)


def verify_principle(F: CompatibilityFrame, s) -> Optional[Countermodel]:
    """Instantiate the metavariables of ``s`` with propositions (Boolean ones with members of the family).

    Returns the first failing substitution and possibility, ``None`` when
    the principle holds on ``F``.
    """
    s = principle(s)
    general, boolean = s.metavariables
    premises = s.premise_consecutions
    directions = list(s.consecutions())

    for v in _valuations(F, general, boolean, s.name):
        cache = {}
        if any(_evaluate(F, v, p.lhs, cache) & ~_evaluate(F, v, p.rhs, cache) for p in premises):
            continue
        for direction, seq in directions:
            failing = _evaluate(F, v, seq.lhs, cache) & ~_evaluate(F, v, seq.rhs, cache)
            if failing:
                return Countermodel(
                    F,
                    v,
                    bitset.lowest(failing),
                    seq,
                    boolean,
                    law=s.name,
                    direction=direction if s.both_ways else None,
                )
    return None
