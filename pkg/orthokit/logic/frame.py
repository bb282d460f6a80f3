# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Compatibility frames and their modal, epistemic, grounded and conditional enrichments.

Sets of possibilities are integer bitmasks internally (see
:mod:`orthokit.logic.utils.bitset`). The module-level operations accept
masks, :class:`RegularSet` objects or iterables of possibility names, and
return :class:`RegularSet` objects.
"""

import enum
import functools
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence

from orthokit.logic.core import Base, StructureError, ValidationError, Witness
from orthokit.logic.lattice import FiniteOrtholattice, join_irreducibles
from orthokit.logic.utils import bitset
from orthokit.logic.utils.humanize import did_you_mean, set_to_human

LOG = logging.getLogger(__name__)


class FrameCondition(enum.Enum):
    IREGULARITY = "IRegularity"
    DTOTAL = "DTotal"
    FACTIVITY = "Factivity"
    KNOWABILITY = "Knowability"
    GROUNDING_KEY = "GroundingKey"
    CREGULARITY = "CRegularity"
    ID = "Id"
    CENTER = "Center"
    COMP = "Comp"
    MUST_CENTER = "MustCenter"
    MUST_COMP = "MustComp"
    UPDATE = "Update"
    MUST_IMP = "MustImp"
    MUST_EXP = "MustExp"
    PRESERVE = "Preserve"
    FLAT = "Flat"
    CONS = "Cons"
    COMBINE = "Combine"
    SWITCH = "Switch"
    SPLIT = "Split"

    @classmethod
    def lookup(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "").replace("_", "").lower()
        for c in cls:
            if c.value.lower() == key or c.name.replace("_", "").lower() == key:
                return c
        correction = did_you_mean(str(name), [c.value for c in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown frame condition '{name}'{hint}")


EPISTEMIC_CONDITIONS = (
    FrameCondition.DTOTAL,
    FrameCondition.IREGULARITY,
    FrameCondition.FACTIVITY,
    FrameCondition.KNOWABILITY,
)

SELECTION_CONSTRAINTS = (
    FrameCondition.ID,
    FrameCondition.CENTER,
    FrameCondition.COMP,
    FrameCondition.MUST_CENTER,
    FrameCondition.MUST_COMP,
    FrameCondition.UPDATE,
    FrameCondition.MUST_IMP,
    FrameCondition.MUST_EXP,
    FrameCondition.PRESERVE,
    FrameCondition.FLAT,
    FrameCondition.CONS,
    FrameCondition.COMBINE,
    FrameCondition.SWITCH,
    FrameCondition.SPLIT,
)


class RegularSet:
    """A set of possibilities of a frame.

    Compares equal to another set of the same frame, to its integer mask and
    to any ``set``/``frozenset`` of possibility names.
    """

    __slots__ = ("frame", "mask")

    def __init__(self, frame, mask):
        self.frame = frame
        self.mask = mask

    @property
    def names(self):
        return bitset.to_names(self.mask, self.frame.names)

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return bitset.count(self.mask)

    def __contains__(self, x):
        return bitset.contains(self.mask, self.frame.index(x))

    def __eq__(self, other):
        if isinstance(other, RegularSet):
            return self.mask == other.mask
        if isinstance(other, int):
            return self.mask == other
        if isinstance(other, (set, frozenset)):
            return set(self.names) == {str(x) for x in other}
        return NotImplemented

    def __hash__(self):
        return hash(self.mask)

    def __le__(self, other):
        return bitset.is_subset(self.mask, self.frame.mask(other))

    def __and__(self, other):
        return RegularSet(self.frame, self.mask & self.frame.mask(other))

    def __repr__(self):
        return set_to_human(self.names)


class CompatibilityFrame(Base):
    """Possibilities with a reflexive, symmetric compatibility relation.

    Parameters
    ----------
    names : list of str
    compat : iterable of pairs
        Compatible pairs; reflexive and symmetric pairs are implied.
    i : mapping or sequence, optional
        The (possibly partial) information function.
    R : mapping, optional
        Epistemic accessibility, ``x -> iterable of possibilities``.
    bool_family, prop_family : iterable of sets, optional
        The Boolean family and the family of propositions. Without
        ``prop_family`` every regular set is a proposition.
    selection : mapping ``(x, A) -> y``, optional
        The partial selection function, keyed by possibility and antecedent set.
    validate : bool
        Check targets, regularity of family members, and the declared
        consistency between ``R`` and ``i``.
    """

    def __init__(
        self,
        names: Sequence[str],
        compat: Iterable = (),
        i=None,
        R=None,
        bool_family=None,
        prop_family=None,
        selection=None,
        name: Optional[str] = None,
        validate: bool = True,
    ):
        self.names = [str(x) for x in names]
        self.n = len(self.names)
        self.name = name
        if self.n == 0:
            raise ValidationError("A frame needs at least one possibility")
        if len(set(self.names)) != self.n:
            raise ValidationError("Duplicate possibility names")
        self._index = {x: k for k, x in enumerate(self.names)}
        self.full = bitset.full(self.n)

        self.nbr = [bitset.singleton(k) for k in range(self.n)]
        for a, b in compat:
            a, b = self.index(a), self.index(b)
            self.nbr[a] |= bitset.singleton(b)
            self.nbr[b] |= bitset.singleton(a)

        self.i = None
        if i is not None:
            if isinstance(i, dict):
                self.i = [None] * self.n
                for x, y in i.items():
                    self.i[self.index(x)] = None if y is None else self.index(y)
            else:
                self.i = [None if y is None else self.index(y) for y in i]
                if len(self.i) != self.n:
                    raise ValidationError(f"i has {len(self.i)} entries, expected {self.n}")

        self.R = None
        if R is not None:
            self.R = [0] * self.n
            items = R.items() if isinstance(R, dict) else enumerate(R)
            for x, ys in items:
                self.R[self.index(x)] = self.mask(ys)

        self.bool_family = None if bool_family is None else tuple(self.mask(A) for A in bool_family)
        self._prop_family = None if prop_family is None else tuple(self.mask(A) for A in prop_family)
        self._prop_set = None
        self._regular = None

        self.selection = None
        if selection is not None:
            self.selection = {}
            for (x, A), y in selection.items():
                self.selection[(self.index(x), self.mask(A))] = self.index(y)

        if validate:
            self._validate()

    # Naming

    def index(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < self.n:
                raise ValidationError(f"No possibility with index {x}")
            return x
        try:
            return self._index[str(x)]
        except KeyError:
            correction = did_you_mean(str(x), self.names)
            hint = f", did you mean '{correction}'?" if correction else ""
            raise ValidationError(f"No possibility named '{x}'{hint}") from None

    def mask(self, A) -> int:
        if isinstance(A, RegularSet):
            return A.mask
        if isinstance(A, int) and not isinstance(A, bool):
            if A < 0 or A > self.full:
                raise ValidationError(f"Mask {A} is not a set of possibilities of {self!r}")
            return A
        if isinstance(A, str):
            raise ValidationError(f"Expected a set of possibilities, got the string {A!r}")
        return bitset.from_indices(self.index(x) for x in A)

    def regular(self, A) -> RegularSet:
        return RegularSet(self, self.mask(A))

    def set_name(self, A) -> str:
        return set_to_human(bitset.to_names(self.mask(A), self.names))

    def __len__(self):
        return self.n

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"CompatibilityFrame{label}({self.n} possibilities)"

    # Structure

    def compatible(self, x, y) -> bool:
        return bitset.contains(self.nbr[self.index(x)], self.index(y))

    @property
    def has_total_i(self):
        return self.i is not None and None not in self.i

    @property
    def prop_family(self):
        if self._prop_family is None:
            return self.regular_sets()
        return self._prop_family

    @property
    def declares_prop_family(self):
        return self._prop_family is not None

    def c(self, x, A):
        """Selected possibility, ``None`` when undefined."""
        if self.selection is None:
            raise StructureError(f"{self!r} has no selection function")
        return self.selection.get((x, A))

    def regular_sets(self):
        """All regular sets, in increasing size then index order.

        Every regular set is an intersection of sets ``~{x}``, so the
        family is the intersection closure of those ``n`` generators and ``S``.
        """
        if self._regular is not None:
            return self._regular
        generators = sorted({self.full & ~self.nbr[x] for x in range(self.n)})
        found = {self.full}
        frontier = [self.full]
        while frontier:
            new = []
            for A in frontier:
                for g in generators:
                    B = A & g
                    if B not in found:
                        found.add(B)
                        new.append(B)
            frontier = new
        LOG.debug("%r has %d regular sets", self, len(found))
        self._regular = tuple(sorted(found, key=lambda m: (bitset.count(m), bitset.to_list(m))))
        return self._regular

    def is_proposition(self, A) -> bool:
        if self._prop_family is None:
            return self._is_regular(A)
        if self._prop_set is None:
            self._prop_set = frozenset(self._prop_family)
        return A in self._prop_set

    def _neg(self, A):
        result = 0
        for x in range(self.n):
            if self.nbr[x] & A == 0:
                result |= 1 << x
        return result

    def _join(self, A, B):
        return self._neg(self._neg(A) & self._neg(B))

    def _is_regular(self, A):
        for x in range(self.n):
            if bitset.contains(A, x):
                continue
            if not any(self.nbr[y] & A == 0 for y in bitset.indices(self.nbr[x])):
                return False
        return True

    def _refines(self, y, x):
        return bitset.is_subset(self.nbr[y], self.nbr[x])

    def _down(self, x):
        return bitset.from_indices(y for y in range(self.n) if self._refines(y, x))

    def _box(self, A):
        if self.has_total_i:
            return bitset.from_indices(x for x in range(self.n) if bitset.contains(A, self.i[x]))
        if self.R is not None:
            return bitset.from_indices(x for x in range(self.n) if bitset.is_subset(self.R[x], A))
        raise StructureError(f"{self!r} has no total i function and no accessibility relation")

    def _diamond(self, A):
        return self._neg(self._box(self._neg(A)))

    def _arrow(self, A, B):
        if self.selection is None:
            raise StructureError(f"{self!r} has no selection function")
        result = 0
        for x in range(self.n):
            y = self.selection.get((x, A))
            if y is None or bitset.contains(B, y):
                result |= 1 << x
        return result

    def _validate(self):
        if self.i is not None:
            for y in self.i:
                if y is not None and not 0 <= y < self.n:
                    raise ValidationError(f"i maps to unknown possibility {y}")
        for family, label in ((self.bool_family, "Boolean family"), (self._prop_family, "proposition family")):
            if family is None:
                continue
            if not family:
                raise ValidationError(f"The {label} is empty")
            for A in family:
                if not self._is_regular(A):
                    raise ValidationError(f"Member {self.set_name(A)} of the {label} is not regular")
        if self.selection is not None:
            props = set(self.prop_family)
            for (x, A), y in self.selection.items():
                if A not in props:
                    raise ValidationError(
                        f"Selection at {self.names[x]} uses antecedent {self.set_name(A)} outside the propositions"
                    )
        if self.R is not None and self.has_total_i:
            for x in range(self.n):
                if self.R[x] != self._down(self.i[x]):
                    raise ValidationError(
                        f"R and i disagree at {self.names[x]}: xRy must hold exactly when y refines i(x)"
                    )

    # Documents

    def to_document(self):
        doc = dict(kind="frame", possibilities=list(self.names))
        if self.name:
            doc["name"] = self.name
        doc["compat"] = [
            [self.names[a], self.names[b]]
            for a in range(self.n)
            for b in bitset.indices(self.nbr[a])
            if a < b
        ]
        if self.i is not None:
            doc["i"] = {self.names[x]: self.names[y] for x, y in enumerate(self.i) if y is not None}
        if self.R is not None:
            doc["R"] = {self.names[x]: bitset.to_names(self.R[x], self.names) for x in range(self.n)}
        if self.bool_family is not None:
            doc["bool_family"] = [bitset.to_names(A, self.names) for A in self.bool_family]
        if self._prop_family is not None:
            doc["prop_family"] = [bitset.to_names(A, self.names) for A in self._prop_family]
        if self.selection is not None:
            doc["selection"] = [
                dict(at=self.names[x], antecedent=bitset.to_names(A, self.names), to=self.names[y])
                for (x, A), y in sorted(self.selection.items(), key=lambda e: (bitset.to_list(e[0][1]), e[0][0]))
            ]
        return doc

    @classmethod
    def from_document(cls, doc, validate=True):
        """Build a frame from its JSON document.

        Besides single ``{"at", "antecedent", "to"}`` entries, ``selection``
        accepts whole rows ``{"antecedent": [...], "to": [...]}`` where ``to``
        lists one target (or ``null``) per possibility, in order.
        """
        try:
            names = [str(x) for x in doc["possibilities"]]
            selection = None
            if doc.get("selection") is not None:
                selection = {}
                for entry in doc["selection"]:
                    antecedent = frozenset(entry["antecedent"])
                    if "at" in entry:
                        selection[(entry["at"], antecedent)] = entry["to"]
                        continue
                    targets = entry["to"]
                    if len(targets) != len(names):
                        raise ValidationError(
                            f"Selection row for {sorted(antecedent)} has {len(targets)} entries, expected {len(names)}"
                        )
                    for x, y in zip(names, targets):
                        if y is not None:
                            selection[(x, antecedent)] = y
            return cls(
                names,
                [tuple(p) for p in doc.get("compat", [])],
                i=doc.get("i"),
                R=doc.get("R"),
                bool_family=doc.get("bool_family"),
                prop_family=doc.get("prop_family"),
                selection=selection,
                name=doc.get("name"),
                validate=validate,
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ValidationError(f"Malformed frame document: {e!r}") from e

    def to_dot(self):
        return frame_to_dot(self)


# Regular-set algebra


def is_regular(F: CompatibilityFrame, A) -> bool:
    """``x`` outside ``A`` implies some ``y`` compatible with ``x`` is incompatible with all of ``A``."""
    return F._is_regular(F.mask(A))


def neg_set(F: CompatibilityFrame, A) -> RegularSet:
    return RegularSet(F, F._neg(F.mask(A)))


def meet_set(F: CompatibilityFrame, A, B) -> RegularSet:
    return RegularSet(F, F.mask(A) & F.mask(B))


def join_set(F: CompatibilityFrame, A, B) -> RegularSet:
    return RegularSet(F, F._join(F.mask(A), F.mask(B)))


def refines(F: CompatibilityFrame, y, x) -> bool:
    """Every possibility compatible with ``y`` is compatible with ``x``."""
    return F._refines(F.index(y), F.index(x))


def refines_by_propositions(F: CompatibilityFrame, y, x) -> bool:
    """``y`` belongs to every regular set containing ``x``."""
    y, x = F.index(y), F.index(x)
    return all(bitset.contains(A, y) for A in F.regular_sets() if bitset.contains(A, x))


def down_set(F: CompatibilityFrame, x) -> RegularSet:
    return RegularSet(F, F._down(F.index(x)))


def worlds(F: CompatibilityFrame) -> RegularSet:
    """Possibilities that refine everything they are compatible with."""
    result = 0
    for w in range(F.n):
        if all(F._refines(w, x) for x in bitset.indices(F.nbr[w])):
            result |= 1 << w
    return RegularSet(F, result)


def box_set(F: CompatibilityFrame, A) -> RegularSet:
    """``{x | i(x) in A}``, or ``{x | R(x) within A}`` for a relational frame."""
    return RegularSet(F, F._box(F.mask(A)))


def diamond_set(F: CompatibilityFrame, A) -> RegularSet:
    return RegularSet(F, F._diamond(F.mask(A)))


def box_between(F: CompatibilityFrame, A) -> RegularSet:
    """``{x | every x' compatible with x is in A}``, defined on any frame."""
    A = F.mask(A)
    return RegularSet(F, bitset.from_indices(x for x in range(F.n) if bitset.is_subset(F.nbr[x], A)))


def diamond_between(F: CompatibilityFrame, A) -> RegularSet:
    """``{x | some x' compatible with x is in A}``; not regular in general."""
    A = F.mask(A)
    return RegularSet(F, bitset.from_indices(x for x in range(F.n) if F.nbr[x] & A))


def arrow_set(F: CompatibilityFrame, A, B) -> RegularSet:
    """``{x | if c is defined at x, A then c(x, A) is in B}``."""
    return RegularSet(F, F._arrow(F.mask(A), F.mask(B)))


def arrow_table(F: CompatibilityFrame) -> Dict:
    """``A -> B`` for every pair of propositions, keyed by masks."""
    props = F.prop_family
    return {(A, B): F._arrow(A, B) for A in props for B in props}


# Relativised refinement and compatibility


def _require_bool(F):
    if F.bool_family is None:
        raise StructureError(f"{F!r} has no Boolean family")


def boolean_refines(F: CompatibilityFrame, y, x) -> bool:
    """``y`` belongs to every member of the Boolean family containing ``x``."""
    _require_bool(F)
    y, x = F.index(y), F.index(x)
    return all(bitset.contains(B, y) for B in F.bool_family if bitset.contains(B, x))


def boolean_equivalent(F: CompatibilityFrame, x, y) -> bool:
    return boolean_refines(F, x, y) and boolean_refines(F, y, x)


def boolean_compatible(F: CompatibilityFrame, x, y) -> bool:
    """No Boolean proposition holds at ``x`` while its negation holds at ``y``."""
    _require_bool(F)
    x, y = F.index(x), F.index(y)
    return not any(bitset.contains(B, x) and bitset.contains(F._neg(B), y) for B in F.bool_family)


def general_refines(F: CompatibilityFrame, y, x) -> bool:
    """``y`` belongs to every proposition containing ``x``."""
    y, x = F.index(y), F.index(x)
    return all(bitset.contains(A, y) for A in F.prop_family if bitset.contains(A, x))


# Proposition lattice


class PropositionLattice(FiniteOrtholattice):
    """The ortholattice of regular sets of a frame, ordered by inclusion.

    Meets are intersections and joins are ``~(~A & ~B)``; the order cones
    are only computed when something asks for them.
    """

    def __init__(self, frame: CompatibilityFrame, sets=None):
        self.frame = frame
        self.sets = list(frame.regular_sets() if sets is None else sets)
        self.n = len(self.sets)
        self.name = None if frame.name is None else f"O({frame.name})"
        self.names = [frame.set_name(A) for A in self.sets]
        self._index = {x: k for k, x in enumerate(self.names)}
        self._position = {A: k for k, A in enumerate(self.sets)}
        self.zero = self._position[0]
        self.one = self._position[frame.full]
        self.neg = [self._position[frame._neg(A)] for A in self.sets]
        self._meets = {}
        self._joins = {}

        self.box = None
        if frame.has_total_i or frame.R is not None:
            self.box = [self._locate(frame._box(A), "box") for A in self.sets]

        self.bool_block = None
        if frame.bool_family is not None:
            self.bool_block = frozenset(self._locate(B, "Boolean family") for B in frame.bool_family)

        self.arrow = None
        if frame.selection is not None and set(self.sets) <= set(frame.prop_family):
            self.arrow = {}
            for a, A in enumerate(self.sets):
                for b, B in enumerate(self.sets):
                    self.arrow[(a, b)] = self._locate(frame._arrow(A, B), "arrow")

    def _locate(self, A, what):
        try:
            return self._position[A]
        except KeyError:
            raise ValidationError(
                f"The {what} operation of {self.frame!r} produces the non-regular set {self.frame.set_name(A)}"
            ) from None

    def position(self, A) -> int:
        return self._locate(self.frame.mask(A), "requested")

    def set_of(self, a) -> RegularSet:
        return RegularSet(self.frame, self.sets[self.index(a)])

    def leq(self, a, b):
        return bitset.is_subset(self.sets[self.index(a)], self.sets[self.index(b)])

    def meet(self, a, b):
        return self._position[self.sets[self.index(a)] & self.sets[self.index(b)]]

    def join(self, a, b):
        return self._position[self.frame._join(self.sets[self.index(a)], self.sets[self.index(b)])]

    @functools.cached_property
    def up(self):
        return [
            bitset.from_indices(b for b, B in enumerate(self.sets) if bitset.is_subset(A, B)) for A in self.sets
        ]

    @functools.cached_property
    def down(self):
        return [
            bitset.from_indices(b for b, B in enumerate(self.sets) if bitset.is_subset(B, A)) for A in self.sets
        ]


def proposition_lattice(F: CompatibilityFrame) -> PropositionLattice:
    """All regular sets ordered by inclusion, with box and arrow tables when available."""
    L = PropositionLattice(F)
    LOG.debug("Proposition lattice of %r has %d elements", F, L.n)
    return L


def frame_from_lattice(L: FiniteOrtholattice) -> CompatibilityFrame:
    """Frame on the join-irreducibles, where ``a`` and ``b`` are compatible if ``a`` is not below ``~b``."""
    J = join_irreducibles(L)
    compat = [(a, b) for a, b in itertools.combinations(range(len(J)), 2) if not L.leq(J[a], L.neg[J[b]])]
    name = None if L.name is None else f"J({L.name})"
    F = CompatibilityFrame([L.names[a] for a in J], compat, name=name)
    F.lattice_elements = J
    return F


# Conditions


def _bool_compatible(F, x, y):
    return not any(bitset.contains(B, x) and bitset.contains(F._neg(B), y) for B in F.bool_family)


def _bool_refines(F, y, x):
    return all(bitset.contains(B, y) for B in F.bool_family if bitset.contains(B, x))


def _prop_refines(F, y, x):
    return all(bitset.contains(A, y) for A in F.prop_family if bitset.contains(A, x))


def _needs(F, cond, *what):
    for w in what:
        if w == "i" and F.i is None:
            raise StructureError(f"{cond.value} needs an i function")
        if w == "total-i" and not F.has_total_i:
            raise StructureError(f"{cond.value} needs a total i function")
        if w == "bool" and F.bool_family is None:
            raise StructureError(f"{cond.value} needs a Boolean family")
        if w == "c" and F.selection is None:
            raise StructureError(f"{cond.value} needs a selection function")


class _Checker:
    """Bounded-quantifier checks, each returning the first failing tuple in index order."""

    def __init__(self, F, cond):
        self.F = F
        self.cond = cond

    def witness(self, *values, message=None):
        F = self.F
        rendered = []
        for kind, v in values:
            rendered.append(F.names[v] if kind == "x" else F.set_name(v))
        return Witness(self.cond.value, rendered, message)

    def c(self, x, A):
        return self.F.selection.get((x, A))


def _check_epistemic(F, cond):
    n, i, nbr = F.n, F.i, F.nbr
    ch = _Checker(F, cond)

    if cond is FrameCondition.DTOTAL:
        _needs(F, cond, "i")
        for x in range(n):
            if i[x] is None:
                return ch.witness(("x", x), message="i is undefined")
        return None

    _needs(F, cond, "total-i")

    if cond is FrameCondition.IREGULARITY:
        for x in range(n):
            for y in bitset.indices(nbr[i[x]]):
                if not any(
                    all(bitset.contains(nbr[y], i[x2]) for x2 in bitset.indices(nbr[x1]))
                    for x1 in bitset.indices(nbr[x])
                ):
                    return ch.witness(("x", x), ("x", y), message="y is compatible with i(x)")
        return None

    if cond is FrameCondition.FACTIVITY:
        for x in range(n):
            if not F._refines(x, i[x]):
                return ch.witness(("x", x), message="x does not refine i(x)")
        return None

    if cond is FrameCondition.KNOWABILITY:
        for x in range(n):
            if not any(F._refines(i[y], x) for y in range(n)):
                return ch.witness(("x", x), message="no i(y) refines x")
        return None

    raise NotImplementedError(cond)


def _check_grounding(F, cond):
    _needs(F, cond, "bool")
    ch = _Checker(F, cond)
    family = set(F.bool_family)
    for A in F.bool_family:
        if F._neg(A) not in family:
            return ch.witness(("A", A), message="the family is not closed under negation")
        for B in F.bool_family:
            if A & B not in family:
                return ch.witness(("A", A), ("A", B), message="the family is not closed under intersection")
    for A, B in itertools.product(F.bool_family, repeat=2):
        if A & B:
            continue
        for x in bitset.indices(A):
            if F.nbr[x] & B:
                return ch.witness(
                    ("A", A), ("A", B), message="compatible members of disjoint Boolean propositions"
                )
    return None


def _check_selection(F, cond):
    _needs(F, cond, "c")
    n, nbr = F.n, F.nbr
    props = F.prop_family
    ch = _Checker(F, cond)
    c = ch.c
    W = ch.witness

    if cond is FrameCondition.CREGULARITY:
        for A in props:
            for x in range(n):
                y0 = c(x, A)
                if y0 is None:
                    continue
                for y in bitset.indices(nbr[y0]):
                    ok = False
                    for x1 in bitset.indices(nbr[x]):
                        targets = [c(x2, A) for x2 in bitset.indices(nbr[x1])]
                        if all(t is not None and bitset.contains(nbr[y], t) for t in targets):
                            ok = True
                            break
                    if not ok:
                        return W(("x", x), ("A", A), ("x", y), message="y is compatible with c(x, A)")
        return None

    if cond is FrameCondition.ID:
        for A in props:
            for x in range(n):
                y = c(x, A)
                if y is not None and not bitset.contains(A, y):
                    return W(("x", x), ("A", A), message="c(x, A) is not in A")
        return None

    if cond in (FrameCondition.CENTER, FrameCondition.COMP):
        _needs(F, cond, "bool")
        for A in props:
            for x in range(n):
                y = c(x, A)
                if cond is FrameCondition.CENTER and bitset.contains(A, x):
                    if y is None or not (_bool_refines(F, x, y) and _bool_refines(F, y, x)):
                        return W(("x", x), ("A", A), message="c(x, A) is not Boolean-equivalent to x")
                if cond is FrameCondition.COMP and nbr[x] & A:
                    if y is None or not _bool_compatible(F, y, x):
                        return W(("x", x), ("A", A), message="c(x, A) is not Boolean-compatible with x")
        return None

    _needs(F, cond, "total-i")
    i = F.i

    if cond is FrameCondition.MUST_CENTER:
        for A in props:
            for x in range(n):
                if bitset.contains(A, i[x]) and c(x, A) != x:
                    return W(("x", x), ("A", A), message="i(x) is in A but c(x, A) != x")
        return None

    if cond is FrameCondition.MUST_COMP:
        for A in props:
            for x in range(n):
                if any(bitset.contains(A, i[x1]) for x1 in bitset.indices(nbr[x])):
                    y = c(x, A)
                    if y is None or not bitset.contains(nbr[x], y):
                        return W(("x", x), ("A", A), message="c(x, A) is not compatible with x")
        return None

    if cond is FrameCondition.UPDATE:
        for A in props:
            for x in range(n):
                y = c(x, A)
                if y is not None and not bitset.contains(A, i[y]):
                    return W(("x", x), ("A", A), message="i(c(x, A)) is not in A")
        return None

    if cond in (FrameCondition.MUST_IMP, FrameCondition.MUST_EXP):
        if cond is FrameCondition.MUST_IMP:
            _needs(F, cond, "bool")
            antecedents = props
        else:
            _needs(F, cond, "bool")
            antecedents = [A for A in props if A in set(F.bool_family)]
        for A in antecedents:
            for x in range(n):
                y1, y2 = c(x, A), c(i[x], A)
                if y1 is None and y2 is None:
                    continue
                if y1 is None or y2 is None:
                    return W(("x", x), ("A", A), message="c is defined at only one of (x, A) and (i(x), A)")
                if cond is FrameCondition.MUST_IMP and not _bool_refines(F, i[y1], y2):
                    return W(("x", x), ("A", A), message="i(c(x, A)) does not Boolean-refine c(i(x), A)")
                if cond is FrameCondition.MUST_EXP and not _prop_refines(F, y2, i[y1]):
                    return W(("x", x), ("A", A), message="c(i(x), A) does not refine i(c(x, A))")
        return None

    if cond is FrameCondition.PRESERVE:
        for A, B in itertools.product(props, repeat=2):
            possible = F._diamond(A & B)
            for x in range(n):
                y = c(x, A)
                if y is None or not bitset.contains(possible, x) or not bitset.contains(B, i[x]):
                    continue
                if not bitset.contains(B, i[y]):
                    return W(("x", x), ("A", A), ("A", B), message="i(c(x, A)) is not in B")
        return None

    if cond is FrameCondition.FLAT:
        for A, B in itertools.product(props, repeat=2):
            AB = A & B
            for x in range(n):
                y = c(x, A)
                left = y is not None and c(y, AB) is not None
                right = c(x, AB)
                if left != (right is not None):
                    return W(("x", x), ("A", A), ("A", B), message="definedness differs")
                if left and c(y, AB) != right:
                    return W(("x", x), ("A", A), ("A", B), message="c(c(x, A), A & B) != c(x, A & B)")
        return None

    if cond is FrameCondition.CONS:
        for A in props:
            possible = F._diamond(A)
            for x in bitset.indices(possible):
                y = c(x, A)
                for x1 in bitset.indices(nbr[x]):
                    y1 = c(x1, A)
                    if y is None or y1 is None or not bitset.contains(nbr[y], y1):
                        return W(("x", x), ("A", A), ("x", x1), message="c(x', A) is not compatible with c(x, A)")
        return None

    if cond is FrameCondition.COMBINE:
        for A in props:
            for x in range(n):
                y = c(x, A)
                for x1 in bitset.indices(nbr[x] & A):
                    if not any(
                        bitset.contains(A, i[x2]) and c(x2, A) == y for x2 in bitset.indices(nbr[x1])
                    ):
                        return W(("x", x), ("A", A), ("x", x1), message="no combining x'' for x'")
        return None

    if cond in (FrameCondition.SWITCH, FrameCondition.SPLIT):
        _needs(F, cond, "bool")
        booleans = [A for A in props if A in set(F.bool_family)]
        if cond is FrameCondition.SWITCH:
            for A in booleans:
                for B in props:
                    notB = F._neg(B)
                    for x in range(n):
                        y = c(x, A)
                        if y is None or bitset.contains(notB, y):
                            continue
                        if not any(
                            c(x1, A) is not None and bitset.contains(B, c(x1, A)) for x1 in bitset.indices(nbr[x])
                        ):
                            return W(("x", x), ("A", A), ("A", B), message="no x' with c(x', A) in B")
            return None
        for A in booleans:
            for B, C in itertools.product(props, repeat=2):
                BC, joined = B | C, F._join(B, C)
                for x in range(n):
                    y = c(x, A)
                    if y is None or not bitset.contains(joined, y):
                        continue
                    for x1 in bitset.indices(nbr[x]):
                        if not any(
                            c(x2, A) is None or bitset.contains(BC, c(x2, A)) for x2 in bitset.indices(nbr[x1])
                        ):
                            return W(
                                ("x", x), ("A", A), ("A", B), ("A", C), message="c(x'', A) escapes B and C"
                            )
        return None

    raise NotImplementedError(cond)


def check_condition(F: CompatibilityFrame, cond) -> Optional[Witness]:
    """Check a frame condition, returning the first failing tuple or ``None``.

    Raises
    ------
    StructureError
        When the condition needs an i function, Boolean family or selection
        function that ``F`` lacks.
    """
    cond = FrameCondition.lookup(cond)
    if cond in EPISTEMIC_CONDITIONS:
        return _check_epistemic(F, cond)
    if cond is FrameCondition.GROUNDING_KEY:
        return _check_grounding(F, cond)
    return _check_selection(F, cond)


def is_epistemic(F: CompatibilityFrame) -> bool:
    return F.has_total_i and all(check_condition(F, c) is None for c in EPISTEMIC_CONDITIONS)


def check_families(F: CompatibilityFrame) -> Optional[Witness]:
    """The Boolean family is grounded; propositions are regular and closed under the operations."""
    if F.bool_family is not None:
        if not F.bool_family:
            return Witness("bool-family", [], "the Boolean family is empty")
        for B in F.bool_family:
            if not F._is_regular(B):
                return Witness("bool-family", [F.set_name(B)], "not regular")
        w = check_condition(F, FrameCondition.GROUNDING_KEY)
        if w is not None:
            return w

    props = F.prop_family
    members = set(props)
    for A in props:
        if not F._is_regular(A):
            return Witness("prop-family", [F.set_name(A)], "not regular")
    if F.bool_family is not None:
        for B in F.bool_family:
            if B not in members:
                return Witness("prop-family", [F.set_name(B)], "Boolean proposition missing from the propositions")

    operations = [("negation", lambda A: F._neg(A))]
    if F.has_total_i or F.R is not None:
        operations.append(("box", lambda A: F._box(A)))
    for label, op in operations:
        for A in props:
            if op(A) not in members:
                return Witness("prop-family", [F.set_name(A)], f"not closed under {label}")

    binary = [("intersection", lambda A, B: A & B)]
    if F.selection is not None:
        binary.append(("arrow", lambda A, B: F._arrow(A, B)))
    for label, op in binary:
        for A, B in itertools.product(props, repeat=2):
            if op(A, B) not in members:
                return Witness("prop-family", [F.set_name(A), F.set_name(B)], f"not closed under {label}")
    return None


# Constructions


def _pair_name(a, b):
    return f"({a},{b})"


def product(F1: CompatibilityFrame, F2: CompatibilityFrame, name=None) -> CompatibilityFrame:
    """Pairs of possibilities, compatible and accessible componentwise."""
    for F in (F1, F2):
        if F.R is None:
            raise StructureError(f"{F!r} has no accessibility relation")
    pairs = list(itertools.product(range(F1.n), range(F2.n)))
    names = [_pair_name(F1.names[a], F2.names[b]) for a, b in pairs]
    position = {p: k for k, p in enumerate(pairs)}

    compat = []
    R = {}
    for k, (a, b) in enumerate(pairs):
        for a2 in bitset.indices(F1.nbr[a]):
            for b2 in bitset.indices(F2.nbr[b]):
                if position[(a2, b2)] > k:
                    compat.append((k, position[(a2, b2)]))
        R[k] = [position[(a2, b2)] for a2 in bitset.indices(F1.R[a]) for b2 in bitset.indices(F2.R[b])]

    F = CompatibilityFrame(names, compat, R=R, name=name)
    F.components = (F1, F2, pairs)
    return F


def fresh_name(x):
    return f"i({x})"


def relational_to_functional(F: CompatibilityFrame) -> CompatibilityFrame:
    """Replace the accessibility relation by an i function.

    ``i(x)`` is compatible with exactly what some R-successor of ``x`` is
    compatible with. An existing possibility with that profile is reused;
    otherwise a fresh possibility named ``i(x)`` is added. Fresh
    possibilities are mapped to themselves by ``i``.

    Raises
    ------
    StructureError
        When the frame has no accessibility relation.
    ValidationError
        When ``R`` is empty somewhere, or the result does not satisfy
        ``xRy`` exactly when ``y`` refines ``i(x)``.
    """
    if F.R is None:
        raise StructureError(f"{F!r} has no accessibility relation")

    n = F.n
    profiles = []
    for x in range(n):
        if F.R[x] == 0:
            raise ValidationError(f"R is empty at {F.names[x]}")
        profiles.append(bitset.union_all(F.nbr[y] for y in bitset.indices(F.R[x])))

    existing = {}
    for z in range(n):
        existing.setdefault(F.nbr[z], z)

    i = [None] * n
    fresh = []
    fresh_by_profile = {}
    for x in range(n):
        C = profiles[x]
        if C in existing:
            i[x] = existing[C]
        elif C in fresh_by_profile:
            i[x] = fresh_by_profile[C]
        else:
            k = n + len(fresh)
            fresh.append(x)
            fresh_by_profile[C] = k
            i[x] = k

    names = list(F.names) + [fresh_name(F.names[x]) for x in fresh]
    compat = [(a, b) for a in range(n) for b in bitset.indices(F.nbr[a]) if a < b]
    for k, x in enumerate(fresh):
        f = n + k
        compat.extend((f, y) for y in bitset.indices(profiles[x]))
        for k2, x2 in enumerate(fresh):
            if k2 > k and profiles[x] & F.R[x2]:
                compat.append((f, n + k2))
    i.extend(n + k for k in range(len(fresh)))

    G = CompatibilityFrame(
        names,
        compat,
        i=i,
        bool_family=None if F.bool_family is None else [B for B in F.bool_family],
        name=None if F.name is None else f"{F.name}-functional",
        validate=False,
    )
    G.origin = {n + k: F.R[x] for k, x in enumerate(fresh)}
    G.R = [G._down(G.i[x]) for x in range(G.n)]

    original = bitset.full(n)
    for x in range(n):
        if G.R[x] & original != F.R[x]:
            raise ValidationError(
                f"The accessibility relation at {F.names[x]} is not the refinement set of any possibility"
            )
    LOG.debug("Functional representation of %r adds %d possibilities", F, len(fresh))
    return G


# DOT


def frame_to_dot(F: CompatibilityFrame) -> str:
    """Compatibility edges solid, strict refinements dashed, i edges tagged ``kind="i"``."""
    lines = ["graph frame {", "  node [shape=point, xlabel=\"\"];"]
    for x in range(F.n):
        lines.append(f'  p{x} [xlabel="{F.names[x]}"];')
    for a in range(F.n):
        for b in bitset.indices(F.nbr[a]):
            if a < b:
                lines.append(f'  p{a} -- p{b} [style=solid, kind="compat"];')
    for y in range(F.n):
        for x in range(F.n):
            if x != y and F._refines(y, x) and not F._refines(x, y):
                lines.append(f'  p{x} -- p{y} [style=dashed, dir=forward, kind="refinement"];')
    if F.i is not None:
        for x, y in enumerate(F.i):
            if y is not None:
                lines.append(f'  p{x} -- p{y} [style=dotted, dir=forward, kind="i"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
